#include <algorithm>
#include <bit>
#include <map>

#include "supergerbe/calculus.hpp"
#include "supergerbe/cech.hpp"
#include "supergerbe/error.hpp"

namespace supergerbe {

namespace {

Scalar mono_scalar(const RingPtr& ring, const Monomial& m, const Gaussian& c = Gaussian(1)) {
  return Scalar::from_poly(ring, Poly{Term{m, c}});
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

struct BodyTerm {
  Mask dx;
  Scalar coef;
};

// Coordinate generator -> basis index, from the star.
std::map<std::uint32_t, std::uint32_t> star_coordinates(const StarData& star) {
  std::map<std::uint32_t, std::uint32_t> out;
  for (std::uint32_t k = 0; k < star.coordinate.size(); ++k)
    if (star.coordinate[k]) out[*star.coordinate[k]] = k;
  return out;
}

// True when some coefficient needs the periodic (trig) path.
bool needs_trig(const Ring& ring, const std::vector<BodyTerm>& terms, const StarData& star) {
  auto coords = star_coordinates(star);
  bool trig = false;
  for (const auto& t : terms) {
    for (std::uint32_t k = 0; k < 64; ++k)
      if (((t.dx >> k) & 1u) && (k >= star.coordinate.size() || !star.coordinate[k])) trig = true;
    for (const auto& term : t.coef.terms())
      for (const auto& f : term.mono) {
        if (f.gen == kTau || ring.is_d_constant(f.gen) || coords.count(f.gen)) continue;
        if (ring.trig_pair_of(f.gen)) {
          trig = true;
          continue;
        }
        raise(ErrorKind::NonPolynomialBody,
              "body coefficient involves '" + ring.even_name(f.gen) + "', which is neither a star coordinate nor periodic");
      }
  }
  return trig;
}

// Euler homotopy about the star center.
SuperForm radial(const RingPtr& ring, const std::vector<BodyTerm>& terms, const StarData& star) {
  auto coords = star_coordinates(star);
  std::vector<std::optional<Scalar>> there(ring->even_count() + 1), back(ring->even_count() + 1);
  for (const auto& [gen, k] : coords) {
    Scalar x = Scalar::generator(ring, gen);
    Scalar c = Scalar::constant(ring, Gaussian(star.center[k]));
    there[gen] = x + c;
    back[gen] = x - c;
  }
  SuperForm::TermList raw;
  for (const auto& t : terms) {
    Scalar shifted = substitute(t.coef, there);
    int p = std::popcount(t.dx);
    for (const auto& term : shifted.terms()) {
      int w = p;
      for (const auto& f : term.mono)
        if (coords.count(f.gen)) w += f.exp;
      int r = 0;
      for (std::uint32_t k = 0; k < 64; ++k) {
        if (!((t.dx >> k) & 1u)) continue;
        Gaussian c = term.coef * Gaussian(Rational(r % 2 ? -1 : 1, w));
        Scalar x = Scalar::generator(ring, *star.coordinate[k]);
        raw.emplace_back(FormKey{0, t.dx & ~(Mask{1} << k), 0}, mono_scalar(ring, term.mono, c) * x);
        ++r;
      }
    }
  }
  SuperForm sigma = SuperForm::from_terms(ring, std::move(raw));
  return map_coefficients(sigma, [&](const Scalar& s) { return substitute(s, back); });
}

// Antiderivative along one axis for coefficients in x, periodic pairs of that
// axis, and axis-constant generators.
class AxisIntegrator {
 public:
  AxisIntegrator(const RingPtr& ring, std::uint32_t axis, std::optional<std::uint32_t> coordinate)
      : ring_(ring), axis_(axis), x_(coordinate) {
    for (const auto& p : ring->trig_pairs())
      if (p.basis == axis) pairs_.push_back(&p);
    for (const auto* p : pairs_) {
      Scalar c = Scalar::generator(ring, p->c), s = Scalar::generator(ring, p->s);
      Scalar is = Gaussian(Rational(0), Rational(1)) * s;
      zp_.push_back(c + is);
      zm_.push_back(c - is);
    }
  }

  Scalar integrate(const Scalar& a) {
    Scalar out(ring_);
    for (const auto& term : a.terms()) out += integrate_term(term);
    return out;
  }

 private:
  int pair_index(std::uint32_t gen, bool& is_c) const {
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
      if (pairs_[j]->c == gen) {
        is_c = true;
        return static_cast<int>(j);
      }
      if (pairs_[j]->s == gen) {
        is_c = false;
        return static_cast<int>(j);
      }
    }
    return -1;
  }

  bool moves_along_axis(std::uint32_t gen) const {
    if (gen == kTau) return false;
    for (const auto& [k, p] : ring_->derivation(gen))
      if (k == axis_ && !p.empty()) return true;
    return false;
  }

  Scalar zpow(std::size_t j, int n) const {
    if (n >= 0) return pow(zp_[j], static_cast<unsigned>(n));
    return pow(zm_[j], static_cast<unsigned>(-n));
  }

  Scalar integrate_term(const Term& term) {
    std::size_t np = pairs_.size();
    std::vector<unsigned> cp(np, 0), sp(np, 0);
    unsigned m = 0;
    Monomial rest;
    for (const auto& f : term.mono) {
      bool is_c = false;
      int j = pair_index(f.gen, is_c);
      if (j >= 0) {
        (is_c ? cp : sp)[static_cast<std::size_t>(j)] = static_cast<unsigned>(f.exp);
      } else if (x_ && f.gen == *x_) {
        m = static_cast<unsigned>(f.exp);
      } else if (moves_along_axis(f.gen)) {
        raise(ErrorKind::NonPolynomialBody, "generator '" + ring_->even_name(f.gen) +
                                                "' varies along " + ring_->form_name(axis_) +
                                                " but is neither a star coordinate nor periodic");
      } else {
        rest.push_back(f);
      }
    }

    // c = (z + 1/z)/2, s = (z - 1/z)/(2i)
    std::map<std::vector<int>, Gaussian> expand{{std::vector<int>(np, 0), term.coef}};
    for (std::size_t j = 0; j < np; ++j) {
      std::map<std::vector<int>, Gaussian> next;
      Gaussian scale = Gaussian(Rational(1)) / Gaussian(Rational(1) << (cp[j]));
      Gaussian two_i(Rational(0), Rational(2));
      for (unsigned q = 0; q < sp[j]; ++q) scale /= two_i;
      for (unsigned a = 0; a <= cp[j]; ++a)
        for (unsigned b = 0; b <= sp[j]; ++b) {
          Gaussian w = scale * Gaussian(Rational(binomial(cp[j], a) * binomial(sp[j], b)));
          if ((sp[j] - b) % 2) w = -w;
          int shift = static_cast<int>(2 * a) - static_cast<int>(cp[j]) + static_cast<int>(2 * b) -
                      static_cast<int>(sp[j]);
          for (const auto& [n, h] : expand) {
            auto n2 = n;
            n2[j] += shift;
            next[n2] += h * w;
          }
        }
      expand.clear();
      for (auto& [n, h] : next)
        if (!h.is_zero()) expand.emplace(n, h);
    }

    Scalar rest_s = mono_scalar(ring_, rest);
    Scalar out(ring_);
    for (const auto& [n, h] : expand) {
      Scalar lambda(ring_);
      Scalar z = Scalar::constant(ring_, Gaussian(1));
      for (std::size_t j = 0; j < np; ++j) {
        if (n[j] == 0) continue;
        lambda += Scalar::from_poly(ring_, pairs_[j]->kappa) * Gaussian(n[j]);
        z *= zpow(j, n[j]);
      }
      Scalar piece(ring_);
      if (lambda.is_zero()) {
        if (!x_)
          raise(ErrorKind::NonPolynomialBody,
                "no coordinate for " + ring_->form_name(axis_) + " to integrate an axis-constant coefficient");
        piece = Scalar::generator(ring_, *x_, static_cast<int>(m) + 1) * Gaussian(Rational(1, m + 1));
      } else {
        Scalar inv = try_invert(lambda);
        piece = z * inv;
        for (unsigned i = 1; i <= m; ++i)
          piece = Scalar::generator(ring_, *x_, static_cast<int>(i)) * z * inv - Gaussian(i) * inv * piece;
      }
      out += h * (rest_s * piece);
    }
    return out;
  }

  RingPtr ring_;
  std::uint32_t axis_;
  std::optional<std::uint32_t> x_;
  std::vector<const TrigPair*> pairs_;
  std::vector<Scalar> zp_, zm_;
};

// Integrates one axis at a time, peeling e_k off the closed remainder.
SuperForm axiswise(const RingPtr& ring, const std::vector<BodyTerm>& terms, const StarData& star) {
  SuperForm::TermList init;
  for (const auto& t : terms) init.emplace_back(FormKey{0, t.dx, 0}, t.coef);
  SuperForm rem = SuperForm::from_terms(ring, std::move(init));
  SuperForm sigma(ring);
  for (std::uint32_t k = 0; k < ring->form_count() && !rem.is_zero(); ++k) {
    std::optional<std::uint32_t> x;
    if (k < star.coordinate.size()) x = star.coordinate[k];
    AxisIntegrator integ(ring, k, x);
    SuperForm::TermList raw;
    for (const auto& [key, coef] : rem.terms()) {
      if (!((key.dx >> k) & 1u)) continue;
      int below = std::popcount(key.dx & ((Mask{1} << k) - 1));
      Scalar a = below % 2 ? -coef : coef;
      Scalar f = integ.integrate(a);
      if (!f.is_zero()) raw.emplace_back(FormKey{0, key.dx & ~(Mask{1} << k), 0}, std::move(f));
    }
    SuperForm f = SuperForm::from_terms(ring, std::move(raw));
    sigma += f;
    rem -= d(f);
    for (const auto& [key, coef] : rem.terms())
      if ((key.dx >> k) & 1u)
        raise(ErrorKind::NonPolynomialBody, "axis " + ring->form_name(k) + " did not integrate out");
  }
  if (!rem.is_zero()) raise(ErrorKind::NonPolynomialBody, "body remainder is not exact on this chart");
  return sigma;
}

}  // namespace

SuperForm poincare_solve(const SuperForm& a, const StarData& star) {
  const RingPtr& ring = a.ring();
  if (a.is_zero()) return a;
  for (const auto& [key, coef] : a.terms())
    if (key.degree() == 0) raise(ErrorKind::InvalidArgument, "poincare_solve needs form degree >= 1");
  if (!d(a).is_zero()) raise(ErrorKind::NotClosed, "poincare_solve: argument is not closed");

  auto [b, s] = body_soul_split(a);
  SuperForm sigma(ring);
  if (!s.is_zero()) sigma += soul_homotopy(s);
  if (!b.is_zero()) {
    std::vector<BodyTerm> terms;
    for (const auto& [key, coef] : b.terms()) terms.push_back({key.dx, coef});
    sigma += needs_trig(*ring, terms, star) ? axiswise(ring, terms, star) : radial(ring, terms, star);
  }
  if (d(sigma) != a) raise(ErrorKind::NonPolynomialBody, "chart primitive does not verify");
  return sigma;
}

}  // namespace supergerbe
