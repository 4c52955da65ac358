#include "supergerbe/bodysoul.hpp"

#include "supergerbe/error.hpp"

namespace supergerbe {

namespace {

bool family_has_soul(const CechFamily& f) {
  for (const auto& p : f.parts)
    if (!is_pure_body(p)) return true;
  return false;
}

CechFamily family_body(const CechFamily& f) {
  CechFamily out = f;
  for (auto& p : out.parts) p = body(p);
  return out;
}

}  // namespace

bool has_soul(const GerbeCocycle& g) { return family_has_soul(g.h) || family_has_soul(g.A) || family_has_soul(g.B); }

GerbeCocycle gerbe_body(const GerbeCocycle& g) {
  return GerbeCocycle{g.cover, family_body(g.h), family_body(g.A), family_body(g.B)};
}

GerbeCocycle gerbe_p_pullback(const GerbeCocycle& gb) {
  if (has_soul(gb)) raise(ErrorKind::SoulContamination, "body gerbe carries soul terms");
  return gb;
}

SuperForm beta_from_curvature(const GerbeCocycle& g, const Exec& exec) {
  SuperForm hs = soul(curvature(g, exec));
  return hs.is_zero() ? hs : soul_homotopy(hs);
}

SuperForm canonical_beta(const SuperForm& beta) {
  if (!is_pure_soul(beta)) raise(ErrorKind::NotPureSoul, "beta must be pure soul");
  SuperForm db = d(beta);
  return db.is_zero() ? db : soul_homotopy(db);
}

GerbeCocycle decomposition_difference(const GerbeCocycle& g, const DecompositionResult& r) {
  return tensor(g, dual(tensor(gerbe_p_pullback(r.body), make_trivial(g.cover, r.beta))));
}

DecompositionResult decompose(const GerbeCocycle& g, const Exec& exec) {
  auto rep = check_gerbe_cocycle(g, exec);
  if (auto f = rep.first_failure())
    raise(ErrorKind::NotACocycle, "gerbe fails " + f->identity + " at " + f->where + ": " + f->detail);
  DecompositionResult r;
  r.body = gerbe_body(g);
  r.beta = beta_from_curvature(g, exec);
  try {
    r.certificate = trivialize(decomposition_difference(g, r), exec);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ObstructionNonzero) raise(ErrorKind::UnsupportedBodyData, e.what());
    throw;
  }
  auto v = verify_decomposition(g, r, exec);
  if (auto f = v.first_failure())
    raise(ErrorKind::NotACocycle, "decomposition does not verify: " + f->identity + " " + f->detail);
  return r;
}

Report verify_decomposition(const GerbeCocycle& g, const DecompositionResult& r, const Exec& exec) {
  Report rep;
  rep.subject = "decomposition";
  rep.add("body has no soul", "", !has_soul(r.body));
  rep.add("beta pure soul", "", is_pure_soul(r.beta) || r.beta.is_zero());
  rep.add("beta even 2-form", "", r.beta.is_zero() || r.beta.is_homogeneous(2, 0));
  auto body_check = check_gerbe_cocycle(r.body, exec);
  rep.add("body is a cocycle", "", body_check.ok(),
          body_check.ok() ? "" : body_check.first_failure()->identity + " " + body_check.first_failure()->where);
  try {
    SuperForm H = curvature(g, exec);
    SuperForm Hb = curvature(r.body, exec);
    SuperForm defect = H - Hb - d(r.beta);
    rep.add("H = H_b + d beta", "", defect.is_zero(), defect.is_zero() ? "" : "defect " + defect.str());
    auto cert = verify_certificate(decomposition_difference(g, r), r.certificate, exec);
    for (const auto& c : cert.checks) rep.add("certificate: " + c.identity, c.where, c.ok, c.detail);
  } catch (const Error& e) {
    rep.add("curvature", "", false, e.what());
  }
  return rep;
}

Report flat_iso_check(const std::vector<std::pair<std::string, GerbeCocycle>>& corpus, const Exec& exec) {
  Report rep;
  rep.subject = "flat-iso";
  for (const auto& [name, g] : corpus) {
    SuperForm H;
    try {
      H = curvature(g, exec);
    } catch (const Error& e) {
      rep.add("flat", name, false, e.what());
      continue;
    }
    if (!H.is_zero()) {
      rep.add("flat", name, false, "curvature " + H.str());
      continue;
    }
    rep.add("flat", name, true);
    GerbeCocycle gb = gerbe_body(g);
    auto back = gerbe_body(gerbe_p_pullback(gb));
    bool same = first_difference(back.h, gb.h) < 0 && first_difference(back.A, gb.A) < 0 &&
                first_difference(back.B, gb.B) < 0;
    rep.add("i* p* = id", name, same);
    try {
      auto diff = tensor(g, dual(gerbe_p_pullback(gb)));
      auto cert = trivialize(diff, exec);
      rep.add("G ~ p* i* G", name, verify_certificate(diff, cert, exec).ok());
    } catch (const Error& e) {
      rep.add("G ~ p* i* G", name, false, std::string(to_string(e.kind())) + ": " + e.what());
    }
  }
  return rep;
}

}  // namespace supergerbe
