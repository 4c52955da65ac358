#include "supergerbe/ring.hpp"

#include <algorithm>

#include "supergerbe/error.hpp"
#include "supergerbe/scalar.hpp"

namespace supergerbe {

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (const auto& f : m)
    if (f.gen != kTau) d += f.exp;
  return d;
}

int tau_power(const Monomial& m) {
  return (!m.empty() && m.front().gen == kTau) ? m.front().exp : 0;
}

int exponent_of(const Monomial& m, std::uint32_t gen) {
  for (const auto& f : m) {
    if (f.gen == gen) return f.exp;
    if (f.gen > gen) break;
  }
  return 0;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].gen < b[j].gen)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].gen < a[i].gen) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].exp + b[j].exp;
      if (e != 0) out.push_back({a[i].gen, e});
      ++i;
      ++j;
    }
  }
  return out;
}

bool monomial_divides(const Monomial& a, const Monomial& b) {
  std::size_t j = 0;
  for (const auto& f : a) {
    if (f.gen == kTau) continue;
    while (j < b.size() && b[j].gen < f.gen) ++j;
    if (j == b.size() || b[j].gen != f.gen || b[j].exp < f.exp) return false;
  }
  return true;
}

Monomial monomial_div(const Monomial& b, const Monomial& a) {
  Monomial inv = a;
  for (auto& f : inv) f.exp = -f.exp;
  return monomial_mul(b, inv);
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].gen < b[j].gen)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].gen < a[i].gen) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].gen, std::max(a[i].exp, b[j].exp)});
      ++i;
      ++j;
    }
  }
  return out;
}

bool monomials_coprime(const Monomial& a, const Monomial& b) {
  for (const auto& f : a)
    if (f.gen != kTau && exponent_of(b, f.gen) != 0) return false;
  return true;
}

int monomial_compare(const Monomial& a, const Monomial& b) {
  int da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da < db ? -1 : 1;
  std::size_t i = tau_power(a) != 0 ? 1 : 0;
  std::size_t j = tau_power(b) != 0 ? 1 : 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) return 1;
    if (i == a.size()) return -1;
    if (a[i].gen != b[j].gen) return a[i].gen < b[j].gen ? 1 : -1;
    if (a[i].exp != b[j].exp) return a[i].exp < b[j].exp ? -1 : 1;
    ++i;
    ++j;
  }
  int ta = tau_power(a), tb = tau_power(b);
  if (ta != tb) return ta < tb ? -1 : 1;
  return 0;
}

Poly poly_from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    return monomial_compare(x.mono, y.mono) > 0;
  });
  Poly out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && monomial_compare(out.back().mono, t.mono) == 0) {
      out.back().coef += t.coef;
      if (out.back().coef.is_zero()) out.pop_back();
    } else if (!t.coef.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

Poly poly_add(const Poly& a, const Poly& b, const Gaussian& scale) {
  Poly out;
  out.reserve(a.size() + b.size());
  bool unit = scale.is_one();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = (i == a.size()) ? -1 : (j == b.size()) ? 1 : monomial_compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].mono, unit ? b[j].coef : b[j].coef * scale});
      ++j;
    } else {
      Gaussian s = unit ? a[i].coef + b[j].coef : a[i].coef + b[j].coef * scale;
      if (!s.is_zero()) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly poly_scale(const Poly& a, const Gaussian& c) {
  if (c.is_zero()) return {};
  Poly out = a;
  for (auto& t : out) t.coef *= c;
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) terms.push_back({monomial_mul(x.mono, y.mono), x.coef * y.coef});
  return poly_from_terms(std::move(terms));
}

const std::string& Ring::even_name(std::uint32_t gen) const {
  static const std::string tau = "tau";
  if (gen == kTau) return tau;
  return even_.at(gen - 1);
}

std::optional<Symbol> Ring::lookup(const std::string& name) const {
  if (name == "tau") return Symbol{SymbolKind::Tau, 0};
  auto it = symbols_.find(name);
  if (it == symbols_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Ring::even_id(const std::string& name) const {
  auto s = lookup(name);
  if (!s || s->kind != SymbolKind::Even)
    raise(ErrorKind::UnknownGenerator, "unknown even generator '" + name + "'");
  return s->index;
}

const Ring::Derivation& Ring::derivation(std::uint32_t gen) const {
  static const Derivation none;
  if (gen == kTau || gen > derivations_.size()) return none;
  return derivations_[gen - 1];
}

bool Ring::in_relation(std::uint32_t gen) const {
  return gen != kTau && gen <= constrained_.size() && constrained_[gen - 1];
}

std::optional<std::uint32_t> Ring::coordinate_basis(std::uint32_t gen) const {
  if (gen == kTau || in_relation(gen)) return std::nullopt;
  const auto& d = derivation(gen);
  if (d.size() != 1) return std::nullopt;
  const Poly& p = d.front().second;
  if (p.size() == 1 && p.front().mono.empty() && p.front().coef.is_one()) return d.front().first;
  return std::nullopt;
}

const TrigPair* Ring::trig_pair_of(std::uint32_t gen) const {
  for (const auto& t : trig_)
    if (t.c == gen || t.s == gen) return &t;
  return nullptr;
}

namespace {

bool poly_equal(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].mono == b[i].mono) || a[i].coef != b[i].coef) return false;
  return true;
}

// Single-term poly c * gen * tau^t with c a number; returns the constant part.
std::optional<Poly> constant_multiple_of(const Poly& p, std::uint32_t gen) {
  if (p.size() != 1) return std::nullopt;
  Monomial m = p.front().mono;
  if (exponent_of(m, gen) != 1) return std::nullopt;
  Monomial rest = monomial_div(m, Monomial{{gen, 1}});
  for (const auto& f : rest)
    if (f.gen != kTau) return std::nullopt;
  return Poly{{rest, p.front().coef}};
}

}  // namespace

bool Ring::same_declaration(const Ring& other) const {
  if (even_ != other.even_ || odd_ != other.odd_ || forms_ != other.forms_) return false;
  if (relations_.size() != other.relations_.size()) return false;
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (!(relations_[i].lhs == other.relations_[i].lhs)) return false;
    if (!poly_equal(relations_[i].rhs, other.relations_[i].rhs)) return false;
  }
  for (std::size_t g = 0; g < derivations_.size(); ++g) {
    const auto& a = derivations_[g];
    const auto& b = other.derivations_[g];
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].first != b[i].first || !poly_equal(a[i].second, b[i].second)) return false;
  }
  return true;
}

void RingBuilder::declare(const std::string& name, Symbol sym) {
  if (name.empty() || name == "tau" || name == "i" || name == "d")
    raise(ErrorKind::InvalidArgument, "reserved symbol name '" + name + "'");
  if (!ring_.symbols_.emplace(name, sym).second)
    raise(ErrorKind::InvalidArgument, "duplicate symbol '" + name + "'");
}

std::uint32_t RingBuilder::add_even(const std::string& name) {
  auto id = static_cast<std::uint32_t>(ring_.even_.size() + 1);
  declare(name, {SymbolKind::Even, id});
  ring_.even_.push_back(name);
  ring_.derivations_.emplace_back();
  return id;
}

std::uint32_t RingBuilder::add_odd(const std::string& name) {
  if (ring_.odd_.size() >= 16) raise(ErrorKind::InvalidArgument, "at most 16 odd generators");
  auto id = static_cast<std::uint32_t>(ring_.odd_.size());
  declare(name, {SymbolKind::Odd, id});
  ring_.odd_.push_back(name);
  return id;
}

std::uint32_t RingBuilder::add_form(const std::string& name) {
  if (ring_.forms_.size() >= 64) raise(ErrorKind::InvalidArgument, "at most 64 basis forms");
  auto id = static_cast<std::uint32_t>(ring_.forms_.size());
  declare(name, {SymbolKind::Form, id});
  ring_.forms_.push_back(name);
  return id;
}

RingPtr RingBuilder::symbols() const {
  auto r = std::make_shared<Ring>();
  r->even_ = ring_.even_;
  r->odd_ = ring_.odd_;
  r->forms_ = ring_.forms_;
  r->symbols_ = ring_.symbols_;
  r->derivations_.resize(ring_.even_.size());
  r->constrained_.assign(ring_.even_.size(), false);
  return r;
}

void RingBuilder::set_derivation(std::uint32_t gen, Ring::Derivation d) {
  if (gen == kTau || gen > ring_.even_.size())
    raise(ErrorKind::UnknownGenerator, "derivation for undeclared generator");
  std::sort(d.begin(), d.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Ring::Derivation clean;
  for (auto& [k, p] : d) {
    if (k >= ring_.forms_.size()) raise(ErrorKind::UnknownGenerator, "derivation uses undeclared basis form");
    if (p.empty()) continue;
    if (!clean.empty() && clean.back().first == k)
      clean.back().second = poly_add(clean.back().second, p);
    else
      clean.emplace_back(k, std::move(p));
  }
  ring_.derivations_[gen - 1] = std::move(clean);
}

void RingBuilder::add_relation(Monomial lhs, Poly rhs) {
  ring_.relations_.push_back({std::move(lhs), std::move(rhs)});
}

RingPtr RingBuilder::build() const {
  auto r = std::make_shared<Ring>(ring_);
  r->constrained_.assign(r->even_.size(), false);
  for (const auto& rel : r->relations_) {
    if (rel.lhs.empty() || tau_power(rel.lhs) != 0)
      raise(ErrorKind::NonTerminatingReduction, "relation left side must be a monomial in declared generators");
    for (const auto& f : rel.lhs) {
      if (f.gen == kTau || f.gen > r->even_.size() || f.exp <= 0)
        raise(ErrorKind::UnknownGenerator, "relation uses an undeclared generator");
      r->constrained_[f.gen - 1] = true;
    }
    for (const auto& t : rel.rhs) {
      if (monomial_compare(t.mono, rel.lhs) >= 0)
        raise(ErrorKind::NonTerminatingReduction,
              "relation right side is not below its left side in the monomial order");
      for (const auto& f : t.mono)
        if (f.gen != kTau) r->constrained_[f.gen - 1] = true;
    }
  }
  for (auto& d : r->derivations_)
    for (auto& [k, p] : d) p = normal_form(*r, std::move(p));

  const auto& rels = r->relations_;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    for (std::size_t j = i + 1; j < rels.size(); ++j) {
      if (monomials_coprime(rels[i].lhs, rels[j].lhs)) continue;
      Monomial l = monomial_lcm(rels[i].lhs, rels[j].lhs);
      Poly a = poly_mul(Poly{{monomial_div(l, rels[i].lhs), Gaussian(1)}}, rels[i].rhs);
      Poly b = poly_mul(Poly{{monomial_div(l, rels[j].lhs), Gaussian(1)}}, rels[j].rhs);
      if (!normal_form(*r, poly_add(a, b, Gaussian(-1))).empty())
        raise(ErrorKind::NonConfluentRelations, "relations " + std::to_string(i + 1) + " and " +
                                                    std::to_string(j + 1) + " are not confluent");
    }
  }
  for (std::size_t i = 0; i < rels.size(); ++i) {
    // Differentiate lhs - rhs without reducing the relation away first.
    Poly raw = poly_add(Poly{{rels[i].lhs, Gaussian(1)}}, rels[i].rhs, Gaussian(-1));
    std::vector<Poly> parts(r->forms_.size());
    for (const auto& t : raw) {
      for (const auto& f : t.mono) {
        if (f.gen == kTau) continue;
        Monomial rest = monomial_div(t.mono, Monomial{{f.gen, 1}});
        for (const auto& [k, dp] : r->derivation(f.gen))
          parts[k] = poly_add(parts[k], poly_mul(Poly{{rest, t.coef * Gaussian(f.exp)}}, dp));
      }
    }
    for (std::size_t k = 0; k < parts.size(); ++k)
      if (!normal_form(*r, parts[k]).empty())
        raise(ErrorKind::DerivationMismatch, "derivation table is not compatible with relation " +
                                                 std::to_string(i + 1));
  }

  for (const auto& rel : rels) {
    if (rel.lhs.size() != 1 || rel.lhs.front().exp != 2 || rel.rhs.size() != 2) continue;
    std::uint32_t c = rel.lhs.front().gen;
    const Term& one = rel.rhs.back();
    const Term& sq = rel.rhs.front();
    if (!one.mono.empty() || !one.coef.is_one()) continue;
    if (sq.mono.size() != 1 || sq.mono.front().exp != 2 || sq.coef != Gaussian(-1)) continue;
    std::uint32_t s = sq.mono.front().gen;
    const auto& dc = r->derivation(c);
    const auto& ds = r->derivation(s);
    if (dc.size() != 1 || ds.size() != 1 || dc.front().first != ds.front().first) continue;
    auto lc = constant_multiple_of(dc.front().second, s);
    auto ls = constant_multiple_of(ds.front().second, c);
    if (!lc || !ls || !poly_equal(*lc, poly_scale(*ls, Gaussian(-1)))) continue;
    // kappa = i * w with ds = w c e
    r->trig_.push_back({c, s, dc.front().first, poly_scale(*ls, Gaussian(0, 1))});
  }
  return r;
}

}  // namespace supergerbe
