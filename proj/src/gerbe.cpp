#include "supergerbe/gerbe.hpp"

#include <map>

#include "supergerbe/error.hpp"

namespace supergerbe {

namespace {

const Gaussian kI(Rational(0), Rational(1));

std::string where_of(const Cover& c, int level, std::size_t i) {
  const Simplex& s = c.simplices(level)[i];
  std::string out = "(";
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j) out += " ";
    out += c.chart(s[j]).name;
  }
  return out + ")";
}

void same_cover(const GerbeCocycle& a, const GerbeCocycle& b) {
  if (a.cover != b.cover) raise(ErrorKind::CoverMismatch, "gerbes live on different covers");
}

CechFamily constants_family(const Cover& c, int level, const std::vector<Rational>& v, const Scalar& unit) {
  CechFamily f = zero_family(c, level);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) f.parts[i] = SuperForm(unit * Gaussian(v[i]));
  return f;
}

CechFamily constants_family(const Cover& c, int level, const std::vector<Integer>& v) {
  std::vector<Rational> q(v.begin(), v.end());
  return constants_family(c, level, q, Scalar::constant(c.ring(), Gaussian(1)));
}

// Constant family split by (tau power, real/imaginary). Throws when a
// component is not a constant function.
using Components = std::map<std::pair<int, int>, std::vector<Rational>>;

Components split_constants(const CechFamily& f, const std::string& what) {
  Components out;
  std::size_t n = f.parts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [key, coef] : f.parts[i].terms()) {
      if (key != FormKey{} || !coef.is_constant())
        raise(ErrorKind::NotACocycle, what + " is not constant on tuple " + std::to_string(i));
      for (const auto& t : coef.terms()) {
        int j = tau_power(t.mono);
        if (sgn(t.coef.re()) != 0) {
          auto& v = out[{j, 0}];
          v.resize(n);
          v[i] += t.coef.re();
        }
        if (sgn(t.coef.im()) != 0) {
          auto& v = out[{j, 1}];
          v.resize(n);
          v[i] += t.coef.im();
        }
      }
    }
  }
  for (auto& [k, v] : out) v.resize(n);
  return out;
}

Scalar component_unit(const RingPtr& ring, const std::pair<int, int>& key) {
  Scalar u = Scalar::tau(ring, key.first);
  return key.second ? u * kI : u;
}

std::string component_str(const RingPtr& ring, const Rational& v, const std::pair<int, int>& key) {
  return (component_unit(ring, key) * Gaussian(v)).str();
}

Rational dot(const std::vector<Integer>& w, const std::vector<Rational>& c) {
  Rational s;
  for (std::size_t i = 0; i < w.size(); ++i) s += Rational(w[i]) * c[i];
  return s;
}

template <class F>
auto body_errors_as_unsupported(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonPolynomialBody || e.kind() == ErrorKind::SubstitutionFailure)
      raise(ErrorKind::UnsupportedBodyData, e.what());
    throw;
  }
}

bool even_of_degree(const CechFamily& f, int degree) {
  for (const auto& p : f.parts)
    if (!p.is_zero() && !p.is_homogeneous(degree, 0)) return false;
  return true;
}

// Zig-zag of a closed global p-form: returns the top primitive family F at
// level p (functions) and the constant family delta F at level p + 1.
std::pair<CechFamily, CechFamily> zigzag(const Cover& c, const SuperForm& omega, int p, const Exec& exec,
                                         std::vector<CechFamily>* stages) {
  if (!d(omega).is_zero()) raise(ErrorKind::NotClosed, "form is not closed");
  if (!omega.is_zero() && !omega.is_homogeneous(p, 0))
    raise(ErrorKind::InvalidArgument, "expected an even " + std::to_string(p) + "-form");
  CechFamily fam = global_family(c, omega, 1);
  CechFamily prim;
  for (int step = 0; step < p; ++step) {
    prim = poincare_family(c, fam, exec);
    if (stages) stages->push_back(prim);
    fam = cech_delta(c, prim, exec);
  }
  return {prim, fam};
}

struct Lifted {
  bool ok = true;
  std::vector<Rational> shift_real;  // subtract from the function family
  std::vector<CechFamily> shifts;    // other components, already as families
  std::vector<Integer> m;
  std::vector<Integer> witness;
  std::string witness_value;
};

// Writes c = m + M r over the tau-power / real-imaginary components, with
// `level` the level of r.
Lifted lift_constants(const Cover& c, int level, const Components& comps, const std::optional<std::vector<Integer>>& m0) {
  Lifted out;
  auto D = c.coboundary(level);
  std::size_t rows = c.simplices(level + 1).size();
  for (const auto& [key, vec] : comps) {
    if (key == std::pair<int, int>{0, 0}) continue;
    auto r = D->solve_rational(vec);
    if (!r) {
      out.ok = false;
      for (auto& w : D->cokernel_basis()) {
        Rational v = dot(w, vec);
        if (sgn(v) != 0) {
          if (sgn(v) < 0) {
            v = -v;
            for (auto& x : w) x = -x;
          }
          out.witness = w;
          out.witness_value = component_str(c.ring(), v, key);
          break;
        }
      }
      return out;
    }
    out.shifts.push_back(constants_family(c, level, *r, component_unit(c.ring(), key)));
  }
  std::vector<Rational> real(rows);
  if (auto it = comps.find({0, 0}); it != comps.end()) real = it->second;
  if (m0)
    for (std::size_t i = 0; i < rows; ++i) real[i] -= Rational((*m0)[i]);
  auto lift = D->integral_lift(real);
  if (!lift.integral) {
    out.ok = false;
    out.witness = lift.witness;
    Rational v = lift.witness_value;
    if (sgn(v) < 0) {
      v = -v;
      for (auto& x : out.witness) x = -x;
    }
    out.witness_value = to_string(v);
    return out;
  }
  out.shift_real = lift.r;
  out.m = lift.m;
  if (m0)
    for (std::size_t i = 0; i < rows; ++i) out.m[i] += (*m0)[i];
  return out;
}

}  // namespace

// IntegerClass

bool IntegerClass::is_cocycle() const {
  auto M = cover->coboundary_matrix(level);
  for (const auto& v : M.apply(values))
    if (sgn(v) != 0) return false;
  return true;
}

bool IntegerClass::is_zero_class() const {
  for (const auto& v : values)
    if (sgn(v) != 0) return cover->coboundary(level - 1)->solve_integer(values).has_value();
  return true;
}

bool IntegerClass::cohomologous(const IntegerClass& o) const {
  if (cover != o.cover || level != o.level) return false;
  return (*this - o).is_zero_class();
}

Integer IntegerClass::pairing(const Chain& c) const {
  if (c.level != level) raise(ErrorKind::InvalidArgument, "chain and cochain levels differ");
  Integer s = 0;
  for (const auto& [simp, v] : c.terms) s += v * values.at(*cover->index_of(simp));
  return s;
}

std::optional<Integer> IntegerClass::fundamental_pairing() const {
  auto it = cover->cycles().find("fundamental");
  if (it == cover->cycles().end() || it->second.level != level) return std::nullopt;
  return pairing(it->second);
}

IntegerClass operator+(const IntegerClass& a, const IntegerClass& b) {
  if (a.cover != b.cover || a.level != b.level) raise(ErrorKind::CoverMismatch, "classes on different nerves");
  IntegerClass out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

IntegerClass operator-(const IntegerClass& a, const IntegerClass& b) { return a + (-b); }

IntegerClass IntegerClass::operator-() const {
  IntegerClass out = *this;
  for (auto& v : out.values) v = -v;
  return out;
}

std::optional<std::vector<Integer>> integer_values(const CechFamily& f) {
  std::vector<Integer> out(f.parts.size());
  for (std::size_t i = 0; i < f.parts.size(); ++i) {
    if (f.parts[i].is_zero()) continue;
    const auto& t = f.parts[i].terms();
    if (t.size() != 1 || t.front().first != FormKey{}) return std::nullopt;
    auto n = t.front().second.as_number();
    if (!n || !n->is_real() || !is_integer(n->re())) return std::nullopt;
    out[i] = n->re().get_num();
  }
  return out;
}

// Constructors

GerbeCocycle make_trivial(const CoverPtr& cover, const SuperForm& b) {
  if (!b.is_zero()) {
    if (b.parity() != 0) raise(ErrorKind::OddParity, "curving must be even");
    if (b.degree() != 2) raise(ErrorKind::InvalidArgument, "curving must be a 2-form");
  }
  GerbeCocycle g;
  g.cover = cover;
  g.h = zero_family(*cover, 3);
  g.A = zero_family(*cover, 2);
  g.B = global_family(*cover, b, 1);
  return g;
}

GerbeCocycle make_coboundary(const CoverPtr& cover, const TrivializationCertificate& cert, const Exec& exec) {
  const Cover& c = *cover;
  require_family(c, cert.f, "f");
  require_family(c, cert.z, "z");
  GerbeCocycle g;
  g.cover = cover;
  g.h = cech_delta(c, cert.f, exec) + constants_family(c, 3, cert.m);
  Scalar tau = Scalar::tau(c.ring());
  g.A = cech_delta(c, cert.z, exec) + tau * family_d(cert.f, exec);
  g.B = family_d(cert.z, exec);
  return g;
}

// Invariants

Report check_gerbe_cocycle(const GerbeCocycle& g, const Exec& exec) {
  Report rep;
  rep.subject = "gerbe";
  const Cover& c = *g.cover;
  bool shape = true;
  for (auto [f, lvl, name] : {std::tuple{&g.h, 3, "h"}, std::tuple{&g.A, 2, "A"}, std::tuple{&g.B, 1, "B"}}) {
    bool ok = f->level == lvl && f->parts.size() == c.simplices(lvl).size();
    rep.add("components", name, ok, ok ? "" : "family does not match the nerve");
    shape = shape && ok;
  }
  if (!shape) return rep;
  rep.add("parity", "h", even_of_degree(g.h, 0), "h must be even functions");
  rep.add("parity", "A", even_of_degree(g.A, 1), "A must be even 1-forms");
  rep.add("parity", "B", even_of_degree(g.B, 2), "B must be even 2-forms");

  auto k = cech_delta(c, g.h, exec);
  auto ints = integer_values(k);
  if (ints) {
    rep.add("cocycle", "", true);
  } else {
    for (std::size_t i = 0; i < k.parts.size(); ++i)
      if (!integer_values(CechFamily{4, {k.parts[i]}}))
        rep.add("cocycle", where_of(c, 4, i), false, "delta h = " + k.parts[i].str());
  }

  Scalar tau = Scalar::tau(c.ring());
  auto conn = cech_delta(c, g.A, exec) - tau * family_d(canonicalize(c, g.h, exec), exec);
  bool conn_ok = true;
  for (std::size_t i = 0; i < conn.parts.size(); ++i)
    if (!conn.parts[i].is_zero()) {
      conn_ok = false;
      rep.add("connection", where_of(c, 3, i), false, "delta A - tau dh = " + conn.parts[i].str());
    }
  if (conn_ok) rep.add("connection", "", true);

  auto desc = cech_delta(c, g.B, exec) - family_d(canonicalize(c, g.A, exec), exec);
  bool desc_ok = true;
  for (std::size_t i = 0; i < desc.parts.size(); ++i)
    if (!desc.parts[i].is_zero()) {
      desc_ok = false;
      rep.add("descent", where_of(c, 2, i), false, "delta B - dA = " + desc.parts[i].str());
    }
  if (desc_ok) rep.add("descent", "", true);
  return rep;
}

IntegerClass dd_class(const GerbeCocycle& g, const Exec& exec) {
  auto k = cech_delta(*g.cover, g.h, exec);
  auto ints = integer_values(k);
  if (!ints) raise(ErrorKind::NotIntegral, "delta h is not an integer constant on every 4-tuple");
  return IntegerClass{g.cover, 4, std::move(*ints)};
}

SuperForm curvature(const GerbeCocycle& g, const Exec& exec) {
  try {
    return descend(*g.cover, family_d(g.B, exec), exec);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotACocycle) raise(ErrorKind::NotDescended, std::string("curvature: ") + e.what());
    throw;
  }
}

// Algebra

GerbeCocycle tensor(const GerbeCocycle& a, const GerbeCocycle& b) {
  same_cover(a, b);
  return GerbeCocycle{a.cover, a.h + b.h, a.A + b.A, a.B + b.B};
}

GerbeCocycle dual(const GerbeCocycle& g) { return GerbeCocycle{g.cover, -g.h, -g.A, -g.B}; }

GerbeCocycle pullback_gerbe(const GerbeCocycle& g, const ChartMap& phi, const Exec& exec) {
  if (phi.target != g.cover->ring() || phi.source != g.cover->ring())
    raise(ErrorKind::CoverMismatch, "pullback must map the gerbe's cover to itself");
  validate_chart_map(phi);
  auto pb = [&](const SuperForm& a) { return pullback(a, phi); };
  return GerbeCocycle{g.cover, family_map(g.h, pb, exec), family_map(g.A, pb, exec), family_map(g.B, pb, exec)};
}

// Trivialization

TrivializationCertificate trivialize(const GerbeCocycle& g, const Exec& exec) {
  const Cover& c = *g.cover;
  auto rep = check_gerbe_cocycle(g, exec);
  if (auto f = rep.first_failure())
    raise(ErrorKind::NotACocycle, "gerbe fails " + f->identity + " at " + f->where + ": " + f->detail);
  SuperForm H = curvature(g, exec);
  if (!H.is_zero()) raise(ErrorKind::ObstructionNonzero, "curvature is nonzero: " + H.str());
  IntegerClass k = dd_class(g, exec);

  return body_errors_as_unsupported([&] {
    TrivializationCertificate cert;
    cert.z = poincare_family(c, g.B, exec);
    CechFamily A1 = canonicalize(c, g.A, exec) - cech_delta(c, cert.z, exec);
    Scalar inv_tau = Scalar::tau(c.ring(), -1);
    cert.f = inv_tau * poincare_family(c, A1, exec);
    CechFamily rest = canonicalize(c, g.h, exec) - cech_delta(c, cert.f, exec);
    Components comps = split_constants(rest, "h - delta f");

    auto m0 = c.coboundary(3)->solve_integer(k.values);
    if (!m0) {
      std::string msg = "Dixmier-Douady class is nonzero";
      if (auto p = k.fundamental_pairing()) msg += " (fundamental pairing " + p->get_str() + ")";
      raise(ErrorKind::ObstructionNonzero, msg);
    }
    Lifted l = lift_constants(c, 2, comps, m0);
    if (!l.ok)
      raise(ErrorKind::ObstructionNonzero, "flat holonomy is not integral: period " + l.witness_value);
    for (const auto& s : l.shifts) cert.f = cert.f + s;
    cert.f = cert.f + constants_family(c, 2, l.shift_real, Scalar::constant(c.ring(), Gaussian(1)));
    cert.m = l.m;

    auto v = verify_certificate(g, cert, exec);
    if (auto f = v.first_failure())
      raise(ErrorKind::NotACocycle, "certificate does not verify: " + f->identity + " at " + f->where);
    return cert;
  });
}

Report verify_certificate(const GerbeCocycle& g, const TrivializationCertificate& cert, const Exec& exec) {
  Report rep;
  rep.subject = "certificate";
  const Cover& c = *g.cover;
  bool shape = cert.f.level == 2 && cert.f.parts.size() == c.simplices(2).size() && cert.z.level == 1 &&
               cert.z.parts.size() == c.simplices(1).size() && cert.m.size() == c.simplices(3).size();
  rep.add("components", "", shape, shape ? "" : "certificate does not match the nerve");
  if (!shape) return rep;
  rep.add("parity", "f", even_of_degree(cert.f, 0), "f must be even functions");
  rep.add("parity", "z", even_of_degree(cert.z, 1), "z must be even 1-forms");

  auto cob = make_coboundary(g.cover, cert, exec);
  auto check = [&](const char* name, const CechFamily& want, const CechFamily& got, int level) {
    auto diff = canonicalize(c, want, exec) - canonicalize(c, got, exec);
    bool ok = true;
    for (std::size_t i = 0; i < diff.parts.size(); ++i)
      if (!diff.parts[i].is_zero()) {
        ok = false;
        rep.add(name, where_of(c, level, i), false, "difference " + diff.parts[i].str());
        break;
      }
    if (ok) rep.add(name, "", true);
  };
  check("h = delta f + m", g.h, cob.h, 3);
  check("A = delta z + tau df", g.A, cob.A, 2);
  check("B = dz", g.B, cob.B, 1);
  return rep;
}

// Double complex

Report check_rep_identity(const GerbeCocycle& g, const Exec& exec) {
  Report rep;
  rep.subject = "rep-identity";
  const Cover& c = *g.cover;
  Scalar tau = Scalar::tau(c.ring());
  CechFamily x2 = -(tau * canonicalize(c, g.h, exec));

  auto k = cech_delta(c, g.h, exec);
  auto ints = integer_values(k);
  rep.add("k = delta h integral", "", ints.has_value(), ints ? "" : "delta h is not an integer constant");

  auto first_nonzero = [&](const char* name, const CechFamily& f, int level) {
    for (std::size_t i = 0; i < f.parts.size(); ++i)
      if (!f.parts[i].is_zero()) {
        rep.add(name, where_of(c, level, i), false, "residual " + f.parts[i].str());
        return;
      }
    rep.add(name, "", true);
  };
  if (ints) first_nonzero("D(3,0): delta(-tau h) = -tau k", cech_delta(c, x2, exec) + tau * constants_family(c, 4, *ints), 4);
  first_nonzero("D(2,1): delta A + d(-tau h) = 0", cech_delta(c, g.A, exec) + family_d(x2, exec), 3);
  first_nonzero("D(1,2): delta B - dA = 0", cech_delta(c, g.B, exec) - family_d(canonicalize(c, g.A, exec), exec), 2);
  try {
    SuperForm H = curvature(g, exec);
    first_nonzero("D(0,3): dB = H", family_d(g.B, exec) - global_family(c, H, 1), 1);
  } catch (const Error& e) {
    rep.add("D(0,3): dB = H", "", false, e.what());
  }
  return rep;
}

// Integrality and construction

IntegralityResult integral_check(const CoverPtr& cover, const SuperForm& omega, const Exec& exec) {
  const Cover& c = *cover;
  int p = omega.is_zero() ? 2 : omega.degree().value_or(0);
  if (p != 2 && p != 3) raise(ErrorKind::InvalidArgument, "integral_check expects a 2-form or a 3-form");
  auto [top, cst] = zigzag(c, omega, p, exec, nullptr);
  Components comps = split_constants(Scalar::tau(c.ring(), -1) * cst, "zig-zag remainder");
  Lifted l = lift_constants(c, p, comps, std::nullopt);
  IntegralityResult out;
  out.integral = l.ok;
  if (!l.ok) {
    out.witness = l.witness;
    out.witness_value = l.witness_value;
    return out;
  }
  out.integer_class = IntegerClass{cover, p + 1, l.m};
  return out;
}

GerbeCocycle construct_from_integral_form(const CoverPtr& cover, const SuperForm& H, const Exec& exec) {
  const Cover& c = *cover;
  if (H.is_zero()) return make_trivial(cover, H);
  if (H.degree() != 3) raise(ErrorKind::InvalidArgument, "expected a 3-form");
  std::vector<CechFamily> stages;
  auto [top, cst] = zigzag(c, H, 3, exec, &stages);
  Scalar inv_tau = Scalar::tau(c.ring(), -1);
  Components comps = split_constants(inv_tau * cst, "delta of the zig-zag");
  Lifted l = lift_constants(c, 3, comps, std::nullopt);
  if (!l.ok) raise(ErrorKind::NotIntegral, "form is not integral: period " + l.witness_value);

  GerbeCocycle g;
  g.cover = cover;
  g.B = stages[0];
  g.A = stages[1];
  g.h = inv_tau * stages[2];
  for (const auto& s : l.shifts) g.h = g.h - s;
  g.h = g.h - constants_family(c, 3, l.shift_real, Scalar::constant(c.ring(), Gaussian(1)));

  auto rep = check_gerbe_cocycle(g, exec);
  if (auto f = rep.first_failure())
    raise(ErrorKind::NotACocycle, "constructed gerbe fails " + f->identity + " at " + f->where);
  return g;
}

}  // namespace supergerbe
