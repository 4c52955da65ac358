#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supergerbe/calculus.hpp"
#include "supergerbe/cech.hpp"

namespace supergerbe {

// Deligne 2-cocycle in exponential coordinates: g = exp(tau h).
struct GerbeCocycle {
  CoverPtr cover;
  CechFamily h;  // even functions on 3-tuples
  CechFamily A;  // even 1-forms on 2-tuples
  CechFamily B;  // even 2-forms on charts
};

struct TrivializationCertificate {
  CechFamily f;                 // even functions on 2-tuples
  CechFamily z;                 // even 1-forms on charts
  std::vector<Integer> m;       // integers on 3-tuples
};

// Integer cochain on nerve tuples with `level` vertices, up to integer coboundaries.
struct IntegerClass {
  CoverPtr cover;
  int level = 0;
  std::vector<Integer> values;

  bool is_cocycle() const;
  bool is_zero_class() const;
  // Differs from `o` by an integer coboundary.
  bool cohomologous(const IntegerClass& o) const;
  Integer pairing(const Chain& c) const;
  // Pairing with the cover's "fundamental" cycle when it has the right level.
  std::optional<Integer> fundamental_pairing() const;

  friend IntegerClass operator+(const IntegerClass& a, const IntegerClass& b);
  friend IntegerClass operator-(const IntegerClass& a, const IntegerClass& b);
  IntegerClass operator-() const;
};

// Constant family -> integer vector; nullopt when some entry is not an integer.
std::optional<std::vector<Integer>> integer_values(const CechFamily& f);

GerbeCocycle make_trivial(const CoverPtr& cover, const SuperForm& b);
// (delta f + m, delta z + tau d f, d z).
GerbeCocycle make_coboundary(const CoverPtr& cover, const TrivializationCertificate& cert, const Exec& exec = {});

Report check_gerbe_cocycle(const GerbeCocycle& g, const Exec& exec = {});
IntegerClass dd_class(const GerbeCocycle& g, const Exec& exec = {});
SuperForm curvature(const GerbeCocycle& g, const Exec& exec = {});

GerbeCocycle tensor(const GerbeCocycle& a, const GerbeCocycle& b);
GerbeCocycle dual(const GerbeCocycle& g);
// Same cover only; the map must fix the chart structure.
GerbeCocycle pullback_gerbe(const GerbeCocycle& g, const ChartMap& phi, const Exec& exec = {});

TrivializationCertificate trivialize(const GerbeCocycle& g, const Exec& exec = {});
Report verify_certificate(const GerbeCocycle& g, const TrivializationCertificate& cert, const Exec& exec = {});

// Total differential D = delta + (-1)^q d of (-tau h, A, B), q the Cech degree;
// expected (-tau k, 0, 0, H).
Report check_rep_identity(const GerbeCocycle& g, const Exec& exec = {});

// Zig-zag from a closed global p-form (p = 2, 3) to a constant p-cochain.
struct IntegralityResult {
  bool integral = false;
  IntegerClass integer_class;   // set when integral
  std::vector<Integer> witness; // cycle with non-integral period otherwise
  std::string witness_value;    // exact value of that period
};
IntegralityResult integral_check(const CoverPtr& cover, const SuperForm& omega, const Exec& exec = {});

GerbeCocycle construct_from_integral_form(const CoverPtr& cover, const SuperForm& H, const Exec& exec = {});

}  // namespace supergerbe
