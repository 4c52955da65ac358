#include "supergerbe/calculus.hpp"

#include <bit>
#include <map>

#include "supergerbe/error.hpp"

namespace supergerbe {

SuperFunction sf_mul(const SuperFunction& a, const SuperFunction& b) { return a * b; }

SuperFunction sf_exp(const SuperFunction& n) {
  if (!n.body().is_zero()) raise(ErrorKind::NonNilpotentArgument, "sf_exp: argument has nonzero body");
  SuperFunction sum = Scalar::constant(n.ring(), Gaussian(1));
  SuperFunction term = sum;
  for (long k = 1;; ++k) {
    term = Gaussian(Rational(1, k)) * (term * n);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

SuperFunction sf_log(const SuperFunction& u) {
  Scalar b = u.body();
  auto one = b.as_number();
  if (!one || !one->is_one()) raise(ErrorKind::NonNilpotentArgument, "sf_log: body is not 1");
  SuperFunction n = u.soul();
  SuperFunction sum(u.ring());
  SuperFunction power = n;
  for (long k = 1; !power.is_zero(); ++k) {
    Rational c(k % 2 ? 1 : -1, k);
    sum += Gaussian(c) * power;
    power = power * n;
  }
  return sum;
}

SuperForm wedge(const SuperForm& a, const SuperForm& b) { return a * b; }

SuperForm d(const SuperForm& a) {
  SuperForm::TermList raw;
  for (const auto& [key, coef] : a.terms()) {
    for (auto& [k, ck] : differential(coef)) {
      FormKey out;
      int s = key_product(FormKey{0, Mask{1} << k, 0}, key, out);
      if (s == 0) continue;
      raw.emplace_back(out, s > 0 ? std::move(ck) : -ck);
    }
    int nt = std::popcount(key.theta);
    int nx = std::popcount(key.dx);
    int r = 0;
    for (Mask t = key.theta; t; t &= t - 1, ++r) {
      unsigned j = static_cast<unsigned>(std::countr_zero(t));
      FormKey out{key.theta & ~(Mask{1} << j), key.dx, DThetaPack::add(key.dtheta, DThetaPack::set(0, j, 1))};
      bool neg = ((nt - r - 1) + nx) & 1;
      raw.emplace_back(out, neg ? -coef : coef);
    }
  }
  return SuperForm::from_terms(a.ring(), std::move(raw));
}

SuperForm d(const Scalar& s) { return d(SuperForm(s)); }

std::pair<SuperForm, SuperForm> body_soul_split(const SuperForm& a) {
  SuperForm::TermList b, s;
  for (const auto& t : a.terms()) (t.first.soul_weight() == 0 ? b : s).push_back(t);
  return {SuperForm::from_terms(a.ring(), std::move(b)), SuperForm::from_terms(a.ring(), std::move(s))};
}

SuperForm body(const SuperForm& a) { return body_soul_split(a).first; }
SuperForm soul(const SuperForm& a) { return body_soul_split(a).second; }

SuperFunction body_function(const SuperFunction& f) { return SuperFunction(f.body()); }

bool is_pure_soul(const SuperForm& a) {
  for (const auto& t : a.terms())
    if (t.first.soul_weight() == 0) return false;
  return true;
}

bool is_pure_body(const SuperForm& a) {
  for (const auto& t : a.terms())
    if (t.first.soul_weight() != 0) return false;
  return true;
}

namespace {

void contract_term(const FormKey& key, const Scalar& coef, const Gaussian& scale, SuperForm::TermList& out) {
  int nx = std::popcount(key.dx);
  for (unsigned j = 0; j < 16; ++j) {
    unsigned m = DThetaPack::get(key.dtheta, j);
    if (m == 0 || (key.theta >> j) & 1u) continue;
    int above = std::popcount(j < 63 ? key.theta >> (j + 1) : Mask{0});
    bool neg = (nx + above) & 1;
    FormKey k{key.theta | (Mask{1} << j), key.dx, DThetaPack::set(key.dtheta, j, m - 1)};
    Gaussian c = scale * Gaussian(static_cast<long>(m));
    if (neg) c = -c;
    out.emplace_back(k, coef * c);
  }
}

}  // namespace

SuperForm euler_contract(const SuperForm& a) {
  SuperForm::TermList raw;
  for (const auto& [key, coef] : a.terms()) contract_term(key, coef, Gaussian(1), raw);
  return SuperForm::from_terms(a.ring(), std::move(raw));
}

SuperForm soul_homotopy(const SuperForm& a) {
  SuperForm::TermList raw;
  for (const auto& [key, coef] : a.terms()) {
    int w = key.soul_weight();
    if (w == 0) raise(ErrorKind::NotPureSoul, "soul_homotopy: argument is not pure soul");
    contract_term(key, coef, Gaussian(Rational(1, w)), raw);
  }
  return SuperForm::from_terms(a.ring(), std::move(raw));
}

// ChartMap

ChartMap ChartMap::identity(RingPtr ring) {
  ChartMap m;
  m.target = ring;
  m.source = ring;
  m.even.resize(ring->even_count() + 1);
  m.odd.resize(ring->odd_count());
  m.forms.resize(ring->form_count());
  return m;
}

ChartMap ChartMap::body_inclusion(RingPtr ring) {
  ChartMap m = identity(ring);
  for (auto& o : m.odd) o = SuperFunction(ring);
  return m;
}

void ChartMap::set_even(const std::string& name, SuperFunction image) {
  even.at(target->even_id(name)) = std::move(image);
}

void ChartMap::set_odd(const std::string& name, SuperFunction image) {
  auto s = target->lookup(name);
  if (!s || s->kind != SymbolKind::Odd) raise(ErrorKind::UnknownGenerator, "unknown odd generator '" + name + "'");
  odd.at(s->index) = std::move(image);
}

namespace {

bool same_ring(const ChartMap& phi) { return phi.target == phi.source; }

SuperFunction even_image(const ChartMap& phi, std::uint32_t gen) {
  if (gen < phi.even.size() && phi.even[gen]) return *phi.even[gen];
  if (!same_ring(phi))
    raise(ErrorKind::GeneratorMismatch, "chart map has no image for '" + phi.target->even_name(gen) + "'");
  return Scalar::generator(phi.source, gen);
}

SuperFunction odd_image(const ChartMap& phi, std::uint32_t j) {
  if (j < phi.odd.size() && phi.odd[j]) return *phi.odd[j];
  if (!same_ring(phi))
    raise(ErrorKind::GeneratorMismatch, "chart map has no image for '" + phi.target->odd_name(j) + "'");
  return SuperFunction::theta(phi.source, j);
}

SuperForm form_image(const ChartMap& phi, std::uint32_t k) {
  if (k < phi.forms.size() && phi.forms[k]) return *phi.forms[k];
  for (std::uint32_t g = 1; g <= phi.target->even_count(); ++g)
    if (phi.target->coordinate_basis(g) == k) return d(SuperForm(even_image(phi, g)));
  if (!same_ring(phi))
    raise(ErrorKind::GeneratorMismatch, "chart map has no image for '" + phi.target->form_name(k) + "'");
  return SuperForm::basis(phi.source, k);
}

bool trivial(const ChartMap& phi) {
  if (!same_ring(phi)) return false;
  for (const auto& e : phi.even)
    if (e) return false;
  return true;
}

class Puller {
 public:
  explicit Puller(const ChartMap& phi) : phi_(phi) {}

  SuperFunction scalar(const Scalar& s) {
    if (trivial(phi_)) return SuperFunction(s);
    SuperFunction out(phi_.source);
    for (const auto& t : s.terms()) {
      Monomial taus;
      if (tau_power(t.mono) != 0) taus.push_back({kTau, tau_power(t.mono)});
      SuperFunction term = Scalar::from_poly(phi_.source, Poly{{taus, t.coef}});
      for (const auto& f : t.mono) {
        if (f.gen == kTau) continue;
        term = term * power(f.gen, f.exp);
        if (term.is_zero()) break;
      }
      out += term;
    }
    return out;
  }

  SuperForm form(const SuperForm& a) {
    SuperForm out(phi_.source);
    for (const auto& [key, coef] : a.terms()) {
      SuperForm term = SuperForm(scalar(coef));
      for (Mask t = key.theta; t && !term.is_zero(); t &= t - 1)
        term = term * SuperForm(odd(static_cast<std::uint32_t>(std::countr_zero(t))));
      for (Mask x = key.dx; x && !term.is_zero(); x &= x - 1)
        term = term * basis(static_cast<std::uint32_t>(std::countr_zero(x)));
      for (unsigned j = 0; j < 16 && !term.is_zero(); ++j)
        for (unsigned m = DThetaPack::get(key.dtheta, j); m > 0; --m) term = term * dodd(j);
      out += term;
    }
    return out;
  }

  const SuperFunction& odd(std::uint32_t j) {
    auto it = odd_.find(j);
    if (it == odd_.end()) it = odd_.emplace(j, odd_image(phi_, j)).first;
    return it->second;
  }

 private:
  const SuperFunction& power(std::uint32_t gen, int exp) {
    auto key = std::make_pair(gen, exp);
    auto it = powers_.find(key);
    if (it != powers_.end()) return it->second;
    SuperFunction base = even_image(phi_, gen);
    SuperFunction p = Scalar::constant(phi_.source, Gaussian(1));
    for (int i = 0; i < exp; ++i) p = p * base;
    return powers_.emplace(key, std::move(p)).first->second;
  }

  const SuperForm& basis(std::uint32_t k) {
    auto it = forms_.find(k);
    if (it == forms_.end()) it = forms_.emplace(k, form_image(phi_, k)).first;
    return it->second;
  }

  const SuperForm& dodd(std::uint32_t j) {
    auto it = dodd_.find(j);
    if (it == dodd_.end()) it = dodd_.emplace(j, d(SuperForm(odd(j)))).first;
    return it->second;
  }

  const ChartMap& phi_;
  std::map<std::pair<std::uint32_t, int>, SuperFunction> powers_;
  std::map<std::uint32_t, SuperFunction> odd_;
  std::map<std::uint32_t, SuperForm> forms_;
  std::map<std::uint32_t, SuperForm> dodd_;
};

}  // namespace

SuperFunction pullback(const Scalar& s, const ChartMap& phi) { return Puller(phi).scalar(s); }

SuperFunction pullback(const SuperFunction& f, const ChartMap& phi) {
  Puller p(phi);
  SuperFunction out(phi.source);
  for (const auto& [m, c] : f.terms()) {
    SuperFunction term = p.scalar(c);
    for (Mask t = m; t && !term.is_zero(); t &= t - 1) term = term * p.odd(static_cast<std::uint32_t>(std::countr_zero(t)));
    out += term;
  }
  return out;
}

SuperForm pullback(const SuperForm& a, const ChartMap& phi) { return Puller(phi).form(a); }

void validate_chart_map(const ChartMap& phi) {
  if (!phi.target || !phi.source) raise(ErrorKind::InvalidArgument, "chart map without rings");
  for (std::uint32_t g = 1; g < phi.even.size(); ++g)
    if (phi.even[g] && phi.even[g]->parity() != 0)
      raise(ErrorKind::ParityMismatch, "image of even generator '" + phi.target->even_name(g) + "' is not even");
  for (std::uint32_t j = 0; j < phi.odd.size(); ++j)
    if (phi.odd[j] && !phi.odd[j]->is_zero() && phi.odd[j]->parity() != 1)
      raise(ErrorKind::ParityMismatch, "image of odd generator '" + phi.target->odd_name(j) + "' is not odd");
  Puller p(phi);
  const auto& rels = phi.target->relations();
  for (std::size_t i = 0; i < rels.size(); ++i) {
    // The left side reduces to the right side in the target ring, so pull back
    // the raw monomial factor by factor.
    SuperFunction image = Scalar::constant(phi.source, Gaussian(1));
    for (const auto& f : rels[i].lhs)
      for (int e = 0; e < f.exp; ++e) image = image * even_image(phi, f.gen);
    if (image != p.scalar(Scalar::from_poly(phi.target, rels[i].rhs)))
      raise(ErrorKind::RelationViolation, "chart map does not respect relation " + std::to_string(i + 1));
  }
  for (std::uint32_t g = 1; g <= phi.target->even_count(); ++g) {
    SuperForm dg = d(Scalar::generator(phi.target, g));
    if (p.form(dg) != d(SuperForm(p.scalar(Scalar::generator(phi.target, g)))))
      raise(ErrorKind::RelationViolation,
            "chart map does not commute with d on '" + phi.target->even_name(g) + "'");
  }
}

}  // namespace supergerbe
