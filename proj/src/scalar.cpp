#include "supergerbe/scalar.hpp"

#include <map>

#include "supergerbe/error.hpp"

namespace supergerbe {

namespace {

const Ring::Relation* reducer_for(const Ring& ring, const Monomial& m) {
  for (const auto& rel : ring.relations())
    if (monomial_divides(rel.lhs, m)) return &rel;
  return nullptr;
}

std::string monomial_str(const Ring& ring, const Monomial& m) {
  std::string out;
  int t = 0;
  for (const auto& f : m) {
    if (f.gen == kTau) {
      t = f.exp;
      continue;
    }
    if (!out.empty()) out += "*";
    out += ring.even_name(f.gen);
    if (f.exp != 1) out += "^" + std::to_string(f.exp);
  }
  if (t != 0) {
    if (!out.empty()) out += "*";
    out += "tau";
    if (t != 1) out += "^" + std::to_string(t);
  }
  return out;
}

}  // namespace

Poly normal_form(const Ring& ring, Poly terms) {
  if (ring.relations().empty()) return terms;
  for (;;) {
    std::vector<Term> next;
    bool reduced = false;
    for (auto& t : terms) {
      const Ring::Relation* rel = reducer_for(ring, t.mono);
      if (!rel) {
        next.push_back(std::move(t));
        continue;
      }
      reduced = true;
      Monomial q = monomial_div(t.mono, rel->lhs);
      for (const auto& r : rel->rhs) next.push_back({monomial_mul(q, r.mono), t.coef * r.coef});
    }
    if (!reduced) return next;
    terms = poly_from_terms(std::move(next));
  }
}

Scalar normal_form(const Scalar& s) {
  return Scalar::from_poly(s.ring(), s.terms());
}

Scalar Scalar::from_poly(RingPtr ring, Poly terms) {
  Scalar s(std::move(ring));
  for (const auto& t : terms)
    for (const auto& f : t.mono) {
      if (f.gen != kTau && (!s.ring_ || f.gen > s.ring_->even_count()))
        raise(ErrorKind::UnknownGenerator, "generator index out of range");
      if (f.gen != kTau && f.exp < 0)
        raise(ErrorKind::InvalidArgument, "negative exponent on a non-unit generator");
    }
  terms = poly_from_terms(std::move(terms));
  s.terms_ = s.ring_ ? normal_form(*s.ring_, std::move(terms)) : std::move(terms);
  return s;
}

Scalar Scalar::constant(RingPtr ring, const Gaussian& c) {
  Scalar s(std::move(ring));
  if (!c.is_zero()) s.terms_.push_back({Monomial{}, c});
  return s;
}

Scalar Scalar::generator(RingPtr ring, std::uint32_t gen, int exp) {
  if (gen == kTau) return tau(std::move(ring), exp);
  if (!ring || gen > ring->even_count())
    raise(ErrorKind::UnknownGenerator, "generator index out of range");
  if (exp == 0) return constant(std::move(ring), Gaussian(1));
  return from_poly(std::move(ring), Poly{{Monomial{{gen, exp}}, Gaussian(1)}});
}

Scalar Scalar::tau(RingPtr ring, int power) {
  Scalar s(std::move(ring));
  Monomial m;
  if (power != 0) m.push_back({kTau, power});
  s.terms_.push_back({m, Gaussian(1)});
  return s;
}

bool Scalar::is_constant() const {
  for (const auto& t : terms_)
    if (monomial_degree(t.mono) != 0) return false;
  return true;
}

std::optional<Gaussian> Scalar::as_number() const {
  if (terms_.empty()) return Gaussian();
  if (terms_.size() == 1 && terms_.front().mono.empty()) return terms_.front().coef;
  return std::nullopt;
}

bool Scalar::depends_on(std::uint32_t gen) const {
  for (const auto& t : terms_)
    if (exponent_of(t.mono, gen) != 0) return true;
  return false;
}

RingPtr common_ring(const RingPtr& a, const RingPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  raise(ErrorKind::GeneratorMismatch, "operands belong to different rings");
}

Scalar& Scalar::operator+=(const Scalar& o) {
  ring_ = common_ring(ring_, o.ring_);
  terms_ = poly_add(terms_, o.terms_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  ring_ = common_ring(ring_, o.ring_);
  terms_ = poly_add(terms_, o.terms_, Gaussian(-1));
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

Scalar& Scalar::operator*=(const Gaussian& c) {
  terms_ = poly_scale(terms_, c);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out(common_ring(a.ring_, b.ring_));
  if (a.terms_.empty() || b.terms_.empty()) return out;
  if (a.terms_.size() == 1 && a.terms_.front().mono.empty())
    return Scalar(b) *= a.terms_.front().coef;
  if (b.terms_.size() == 1 && b.terms_.front().mono.empty())
    return Scalar(a) *= b.terms_.front().coef;
  out.terms_ = poly_mul(a.terms_, b.terms_);
  if (out.ring_) out.terms_ = normal_form(*out.ring_, std::move(out.terms_));
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.ring_ && b.ring_ && a.ring_ != b.ring_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef)
      return false;
  return true;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string mono = ring_ ? monomial_str(*ring_, t.mono) : std::string("?");
    Gaussian c = t.coef;
    bool neg = c.prints_negative();
    if (neg) c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (mono.empty())
      out += c.str();
    else if (c.is_one())
      out += mono;
    else
      out += c.str() + "*" + mono;
  }
  return out;
}

Scalar pow(const Scalar& s, unsigned n) {
  Scalar result = Scalar::constant(s.ring(), Gaussian(1));
  Scalar base = s;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

std::vector<std::pair<std::uint32_t, Scalar>> differential(const Scalar& s) {
  std::vector<std::pair<std::uint32_t, Scalar>> out;
  if (!s.ring() || s.is_zero()) return out;
  const Ring& ring = *s.ring();
  std::map<std::uint32_t, std::vector<Term>> parts;
  for (const auto& t : s.terms()) {
    for (const auto& f : t.mono) {
      if (f.gen == kTau) continue;
      const auto& der = ring.derivation(f.gen);
      if (der.empty()) continue;
      Monomial rest = monomial_div(t.mono, Monomial{{f.gen, 1}});
      Gaussian c = t.coef * Gaussian(f.exp);
      for (const auto& [k, dp] : der) {
        auto& bucket = parts[k];
        for (const auto& dt : dp) bucket.push_back({monomial_mul(rest, dt.mono), c * dt.coef});
      }
    }
  }
  for (auto& [k, terms] : parts) {
    Scalar v = Scalar::from_poly(s.ring(), std::move(terms));
    if (!v.is_zero()) out.emplace_back(k, std::move(v));
  }
  return out;
}

Scalar derive(const Scalar& s, std::uint32_t gen) {
  if (!s.ring()) return s;
  if (gen == kTau || gen > s.ring()->even_count())
    raise(ErrorKind::UnknownGenerator, "derive: generator index out of range");
  auto k = s.ring()->coordinate_basis(gen);
  if (!k)
    raise(ErrorKind::InvalidArgument,
          "derive: '" + s.ring()->even_name(gen) + "' is not a coordinate generator");
  for (auto& [basis, v] : differential(s))
    if (basis == *k) return v;
  return Scalar(s.ring());
}

Scalar derive(const Scalar& s, const std::string& gen) {
  if (!s.ring()) raise(ErrorKind::UnknownGenerator, "derive: no ring");
  return derive(s, s.ring()->even_id(gen));
}

Scalar try_invert(const Scalar& s) {
  if (s.terms().size() == 1 && s.is_constant() && !s.terms().front().coef.is_zero()) {
    const Term& t = s.terms().front();
    Monomial m;
    if (tau_power(t.mono) != 0) m.push_back({kTau, -tau_power(t.mono)});
    return Scalar::from_poly(s.ring(), Poly{{m, t.coef.inverse()}});
  }
  raise(ErrorKind::NotAUnit, "not a unit: " + s.str());
}

Scalar substitute(const Scalar& s, const std::vector<std::optional<Scalar>>& images) {
  if (s.is_zero()) return s;
  std::map<std::pair<std::uint32_t, int>, Poly> cache;
  auto image_pow = [&](std::uint32_t gen, int exp) -> const Poly& {
    auto key = std::make_pair(gen, exp);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, pow(*images[gen], static_cast<unsigned>(exp)).terms()).first->second;
  };
  std::vector<Term> acc;
  for (const auto& t : s.terms()) {
    Monomial keep;
    Poly value{{Monomial{}, t.coef}};
    for (const auto& f : t.mono) {
      if (f.gen != kTau && f.gen < images.size() && images[f.gen]) {
        value = poly_mul(value, image_pow(f.gen, f.exp));
        if (value.empty()) break;
      } else {
        keep.push_back(f);
      }
    }
    for (auto& v : value) acc.push_back({monomial_mul(v.mono, keep), v.coef});
  }
  return Scalar::from_poly(s.ring(), std::move(acc));
}

}  // namespace supergerbe
