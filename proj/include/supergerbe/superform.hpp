#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supergerbe/scalar.hpp"

namespace supergerbe {

using Mask = std::uint64_t;

// dtheta multiplicities, four bits per odd generator.
struct DThetaPack {
  static unsigned get(std::uint64_t p, unsigned j) { return static_cast<unsigned>((p >> (4 * j)) & 0xFu); }
  static std::uint64_t set(std::uint64_t p, unsigned j, unsigned m) {
    return (p & ~(std::uint64_t{0xF} << (4 * j))) | (std::uint64_t{m} << (4 * j));
  }
  static unsigned total(std::uint64_t p);
  static std::uint64_t add(std::uint64_t a, std::uint64_t b);  // throws on overflow
};

// theta block, dx block, dtheta block in that canonical order.
struct FormKey {
  Mask theta = 0;
  Mask dx = 0;
  std::uint64_t dtheta = 0;

  int degree() const;
  int soul_weight() const;
  int parity() const;
  friend bool operator==(const FormKey& a, const FormKey& b) {
    return a.theta == b.theta && a.dx == b.dx && a.dtheta == b.dtheta;
  }
  friend bool operator!=(const FormKey& a, const FormKey& b) { return !(a == b); }
};

bool key_less(const FormKey& a, const FormKey& b);

// Sign and key of the product of two canonical monomials; sign 0 when it vanishes.
int key_product(const FormKey& a, const FormKey& b, FormKey& out);

// Element of C(M) tensor Lambda(theta_1..theta_n).
class SuperFunction {
 public:
  using TermList = std::vector<std::pair<Mask, Scalar>>;

  SuperFunction() = default;
  explicit SuperFunction(RingPtr ring) : ring_(std::move(ring)) {}
  SuperFunction(const Scalar& s);  // NOLINT: scalars embed

  static SuperFunction theta(RingPtr ring, std::uint32_t j);
  static SuperFunction from_terms(RingPtr ring, TermList terms);

  const RingPtr& ring() const { return ring_; }
  const TermList& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Parity when homogeneous.
  std::optional<int> parity() const;
  Scalar body() const;
  SuperFunction soul() const;
  Scalar coefficient(Mask m) const;

  SuperFunction& operator+=(const SuperFunction& o);
  SuperFunction& operator-=(const SuperFunction& o);
  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
  friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b);
  friend SuperFunction operator*(const Gaussian& c, const SuperFunction& a);
  SuperFunction operator-() const;

  friend bool operator==(const SuperFunction& a, const SuperFunction& b);
  friend bool operator!=(const SuperFunction& a, const SuperFunction& b) { return !(a == b); }

  std::string str() const;

 private:
  RingPtr ring_;
  TermList terms_;
};

// Bigraded exterior expression with Scalar coefficients on canonical monomials.
class SuperForm {
 public:
  using TermList = std::vector<std::pair<FormKey, Scalar>>;

  SuperForm() = default;
  explicit SuperForm(RingPtr ring) : ring_(std::move(ring)) {}
  SuperForm(const Scalar& s);         // NOLINT: scalars embed
  SuperForm(const SuperFunction& f);  // NOLINT: functions embed

  static SuperForm theta(RingPtr ring, std::uint32_t j);
  static SuperForm dtheta(RingPtr ring, std::uint32_t j);
  static SuperForm basis(RingPtr ring, std::uint32_t k);
  static SuperForm monomial(RingPtr ring, const FormKey& key, Scalar coef);
  static SuperForm from_terms(RingPtr ring, TermList terms);

  const RingPtr& ring() const { return ring_; }
  const TermList& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Homogeneous degree / parity, when uniform; zero form reports nullopt.
  std::optional<int> degree() const;
  std::optional<int> parity() const;
  bool is_homogeneous(int degree, int parity) const;

  // Degree-0 part as a function; throws when positive-degree terms exist.
  SuperFunction to_function() const;

  SuperForm& operator+=(const SuperForm& o);
  SuperForm& operator-=(const SuperForm& o);
  friend SuperForm operator+(SuperForm a, const SuperForm& b) { return a += b; }
  friend SuperForm operator-(SuperForm a, const SuperForm& b) { return a -= b; }
  friend SuperForm operator*(const SuperForm& a, const SuperForm& b);
  friend SuperForm operator*(const Scalar& s, const SuperForm& a);
  friend SuperForm operator*(const Gaussian& c, const SuperForm& a);
  SuperForm operator-() const;

  friend bool operator==(const SuperForm& a, const SuperForm& b);
  friend bool operator!=(const SuperForm& a, const SuperForm& b) { return !(a == b); }

  std::string str() const;

 private:
  RingPtr ring_;
  TermList terms_;
};

std::string key_str(const Ring& ring, const FormKey& key);

// Applies f to every coefficient; drops zeros.
template <class F>
SuperForm map_coefficients(const SuperForm& a, F&& f) {
  SuperForm::TermList out;
  out.reserve(a.terms().size());
  for (const auto& [k, c] : a.terms()) {
    Scalar v = f(c);
    if (!v.is_zero()) out.emplace_back(k, std::move(v));
  }
  return SuperForm::from_terms(a.ring(), std::move(out));
}

}  // namespace supergerbe
