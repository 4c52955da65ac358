#pragma once

#include <map>
#include <random>
#include <vector>

#include "supergerbe/calculus.hpp"
#include "supergerbe/expression.hpp"
#include "supergerbe/random.hpp"
#include "supergerbe/scalar.hpp"

#include <ostream>

namespace supergerbe {
inline std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << g.str(); }
inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }
inline std::ostream& operator<<(std::ostream& os, const SuperFunction& s) { return os << s.str(); }
inline std::ostream& operator<<(std::ostream& os, const SuperForm& s) { return os << s.str(); }
}  // namespace supergerbe

namespace sgtest {

using namespace supergerbe;

// Exact evaluation of a ring element at a point; tau is sent to `tau`.
inline Gaussian evaluate(const Scalar& s, const std::map<std::uint32_t, Gaussian>& point, const Gaussian& tau) {
  Gaussian total;
  for (const auto& t : s.terms()) {
    Gaussian v = t.coef;
    for (const auto& f : t.mono) {
      Gaussian base = f.gen == kTau ? tau : point.at(f.gen);
      int e = f.exp;
      if (e < 0) {
        base = base.inverse();
        e = -e;
      }
      for (int i = 0; i < e; ++i) v *= base;
    }
    total += v;
  }
  return total;
}

// Rational point on the unit circle from the parameter t.
inline std::pair<Gaussian, Gaussian> circle_point(const Rational& t) {
  Rational den = 1 + t * t;
  return {Gaussian(Rational((1 - t * t) / den)), Gaussian(Rational(2 * t / den))};
}

using Random = supergerbe::RandomForms;

}  // namespace sgtest
