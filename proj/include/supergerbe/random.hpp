#pragma once

#include <random>
#include <vector>

#include "supergerbe/superform.hpp"

namespace supergerbe {

// Seeded generator of exact coefficients, polynomials and forms.
class RandomForms {
 public:
  explicit RandomForms(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Gaussian coefficient(bool complex = false) {
    Rational re(integer(-5, 5), integer(1, 3));
    re.canonicalize();
    if (!complex || coin(0.7)) return Gaussian(re);
    Rational im(integer(-3, 3), integer(1, 2));
    im.canonicalize();
    return Gaussian(re, im);
  }

  // Random polynomial in the listed generators.
  Scalar scalar(const RingPtr& ring, const std::vector<std::uint32_t>& gens, int max_terms = 4, int max_deg = 3,
                bool with_tau = false) {
    Poly terms;
    int n = integer(0, max_terms);
    for (int i = 0; i < n; ++i) {
      Monomial m;
      if (with_tau && coin(0.3)) m.push_back({kTau, integer(-1, 2)});
      if (!m.empty() && m.front().exp == 0) m.clear();
      int deg = integer(0, max_deg);
      Monomial g;
      for (int k = 0; k < deg && !gens.empty(); ++k)
        g = monomial_mul(g, Monomial{{gens[integer(0, static_cast<int>(gens.size()) - 1)], 1}});
      terms.push_back({monomial_mul(m, g), coefficient(true)});
    }
    return Scalar::from_poly(ring, std::move(terms));
  }

  // Random canonical key; dtheta multiplicities bounded by max_dt in total.
  FormKey key(unsigned n_odd, unsigned n_forms, int max_dt = 2) {
    FormKey k;
    for (unsigned j = 0; j < n_odd; ++j)
      if (coin(0.4)) k.theta |= Mask{1} << j;
    for (unsigned j = 0; j < n_forms; ++j)
      if (coin(0.35)) k.dx |= Mask{1} << j;
    int t = integer(0, max_dt);
    for (int i = 0; i < t && n_odd; ++i) {
      unsigned j = static_cast<unsigned>(integer(0, static_cast<int>(n_odd) - 1));
      k.dtheta = DThetaPack::set(k.dtheta, j, DThetaPack::get(k.dtheta, j) + 1);
    }
    return k;
  }

  SuperForm form(const RingPtr& ring, const std::vector<std::uint32_t>& gens, int max_terms = 4, int max_dt = 2) {
    SuperForm::TermList terms;
    int n = integer(1, max_terms);
    for (int i = 0; i < n; ++i)
      terms.emplace_back(key(ring->odd_count(), ring->form_count(), max_dt), scalar(ring, gens, 3, 2, true));
    return SuperForm::from_terms(ring, std::move(terms));
  }

  // Nonzero form of fixed degree and parity.
  SuperForm homogeneous(const RingPtr& ring, const std::vector<std::uint32_t>& gens, int degree, int parity,
                        int max_terms = 3) {
    for (;;) {
      SuperForm::TermList terms;
      int n = integer(1, max_terms);
      for (int tries = 0; static_cast<int>(terms.size()) < n && tries < 400; ++tries) {
        FormKey k = key(ring->odd_count(), ring->form_count(), 3);
        if (k.degree() != degree || k.parity() != parity) continue;
        terms.emplace_back(k, scalar(ring, gens, 2, 2, true));
      }
      SuperForm f = SuperForm::from_terms(ring, std::move(terms));
      if (!f.is_zero()) return f;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace supergerbe
