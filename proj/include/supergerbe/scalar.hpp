#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supergerbe/ring.hpp"

namespace supergerbe {

// Element of the exact differential ring, always in normal form.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(RingPtr ring) : ring_(std::move(ring)) {}

  static Scalar from_poly(RingPtr ring, Poly terms);  // reduces
  static Scalar constant(RingPtr ring, const Gaussian& c);
  static Scalar generator(RingPtr ring, std::uint32_t gen, int exp = 1);
  static Scalar tau(RingPtr ring, int power = 1);

  const RingPtr& ring() const { return ring_; }
  const Poly& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // No even generators; tau powers allowed.
  bool is_constant() const;
  // A plain Gaussian rational (no generators, no tau).
  std::optional<Gaussian> as_number() const;
  bool depends_on(std::uint32_t gen) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator*=(const Gaussian& c);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator*(Scalar a, const Gaussian& c) { return a *= c; }
  friend Scalar operator*(const Gaussian& c, Scalar a) { return a *= c; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const;

 private:
  RingPtr ring_;
  Poly terms_;
};

RingPtr common_ring(const RingPtr& a, const RingPtr& b);

// Idempotent reduction of raw terms against the ring's relations.
Poly normal_form(const Ring& ring, Poly terms);
Scalar normal_form(const Scalar& s);

Scalar pow(const Scalar& s, unsigned n);

// Coefficient of e_k in ds, for every k with a nonzero coefficient.
std::vector<std::pair<std::uint32_t, Scalar>> differential(const Scalar& s);

// Coefficient of the basis form d(gen) in ds; gen must be a coordinate.
Scalar derive(const Scalar& s, std::uint32_t gen);
Scalar derive(const Scalar& s, const std::string& gen);

Scalar try_invert(const Scalar& s);

// Replaces each generator with images[gen] when present (index 0 is tau and is
// never replaced).
Scalar substitute(const Scalar& s, const std::vector<std::optional<Scalar>>& images);

}  // namespace supergerbe
