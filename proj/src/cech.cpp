#include "supergerbe/cech.hpp"

#include <algorithm>

#include "supergerbe/calculus.hpp"
#include "supergerbe/error.hpp"

namespace supergerbe {

CechFamily zero_family(const Cover& cover, int level) {
  CechFamily f;
  f.level = level;
  f.parts.assign(cover.simplices(level).size(), SuperForm(cover.ring()));
  return f;
}

CechFamily global_family(const Cover& cover, const SuperForm& g, int level) {
  if (!cover.is_global(g)) raise(ErrorKind::InvalidArgument, "global_family: form uses chart-local generators");
  CechFamily f;
  f.level = level;
  f.parts.assign(cover.simplices(level).size(), g);
  return f;
}

void require_family(const Cover& cover, const CechFamily& f, const std::string& what) {
  std::size_t n = cover.simplices(f.level).size();
  if (f.level < 1 || f.parts.size() != n)
    raise(ErrorKind::MissingComponent, what + ": family at level " + std::to_string(f.level) + " has " +
                                           std::to_string(f.parts.size()) + " components, nerve has " +
                                           std::to_string(n));
}

CechFamily canonicalize(const Cover& cover, const CechFamily& f, const Exec& exec) {
  require_family(cover, f, "canonicalize");
  CechFamily out = f;
  const auto& simp = cover.simplices(f.level);
  parallel_for(exec, simp.size(), [&](std::size_t i) { out.parts[i] = cover.rewrite(f.parts[i], simp[i], simp[i][0]); });
  return out;
}

namespace {

void same_shape(const CechFamily& a, const CechFamily& b) {
  if (a.level != b.level || a.parts.size() != b.parts.size())
    raise(ErrorKind::MissingComponent, "families live on different levels");
}

}  // namespace

CechFamily operator+(const CechFamily& a, const CechFamily& b) {
  same_shape(a, b);
  CechFamily out = a;
  for (std::size_t i = 0; i < out.parts.size(); ++i) out.parts[i] += b.parts[i];
  return out;
}

CechFamily operator-(const CechFamily& a, const CechFamily& b) {
  same_shape(a, b);
  CechFamily out = a;
  for (std::size_t i = 0; i < out.parts.size(); ++i) out.parts[i] -= b.parts[i];
  return out;
}

CechFamily operator-(const CechFamily& a) {
  CechFamily out = a;
  for (auto& p : out.parts) p = -p;
  return out;
}

CechFamily operator*(const Gaussian& c, const CechFamily& a) {
  CechFamily out = a;
  for (auto& p : out.parts) p = c * p;
  return out;
}

CechFamily operator*(const Scalar& c, const CechFamily& a) {
  CechFamily out = a;
  for (auto& p : out.parts) p = c * p;
  return out;
}

bool is_zero(const CechFamily& f) {
  return std::all_of(f.parts.begin(), f.parts.end(), [](const SuperForm& p) { return p.is_zero(); });
}

long first_difference(const CechFamily& a, const CechFamily& b) {
  if (a.level != b.level || a.parts.size() != b.parts.size()) return 0;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    if (a.parts[i] != b.parts[i]) return static_cast<long>(i);
  return -1;
}

CechFamily family_map(const CechFamily& f, const std::function<SuperForm(const SuperForm&)>& fn, const Exec& exec) {
  CechFamily out;
  out.level = f.level;
  out.parts.resize(f.parts.size());
  parallel_for(exec, f.parts.size(), [&](std::size_t i) { out.parts[i] = fn(f.parts[i]); });
  return out;
}

CechFamily cech_delta(const Cover& cover, const CechFamily& w, const Exec& exec) {
  require_family(cover, w, "cech_delta");
  const auto& from = cover.simplices(w.level);
  const auto& to = cover.simplices(w.level + 1);
  CechFamily out;
  out.level = w.level + 1;
  out.parts.assign(to.size(), SuperForm(cover.ring()));
  parallel_for(exec, to.size(), [&](std::size_t r) {
    const Simplex& s = to[r];
    SuperForm acc(cover.ring());
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<long>(i));
      std::size_t fi = *cover.index_of(face);
      SuperForm part = cover.rewrite(w.parts[fi], from[fi], s[0]);
      if (i % 2)
        acc -= part;
      else
        acc += part;
    }
    out.parts[r] = std::move(acc);
  });
  return out;
}

CechFamily family_d(const CechFamily& w, const Exec& exec) {
  return family_map(w, [](const SuperForm& a) { return d(a); }, exec);
}

CechFamily cech_delta_solve(const Cover& cover, const CechFamily& w, const Exec& exec) {
  require_family(cover, w, "cech_delta_solve");
  if (w.level < 2) raise(ErrorKind::InvalidArgument, "cech_delta_solve needs level >= 2; use descend for level 1");
  CechFamily cw = canonicalize(cover, w, exec);
  CechFamily dw = cech_delta(cover, cw, exec);
  for (std::size_t i = 0; i < dw.parts.size(); ++i)
    if (!dw.parts[i].is_zero())
      raise(ErrorKind::NotACocycle,
            "delta of the family is nonzero on " + simplex_str(cover.simplices(w.level + 1)[i]));

  const auto& low = cover.simplices(w.level - 1);
  const auto& high = cover.simplices(w.level);
  CechFamily rho;
  rho.level = w.level - 1;
  rho.parts.assign(low.size(), SuperForm(cover.ring()));
  parallel_for(exec, low.size(), [&](std::size_t r) {
    const Simplex& s = low[r];
    SuperForm acc(cover.ring());
    for (std::uint32_t b = 0; b < cover.chart_count(); ++b) {
      if (std::binary_search(s.begin(), s.end(), b) || cover.partition()[b].is_zero()) continue;
      Simplex t = s;
      auto pos = std::lower_bound(t.begin(), t.end(), b);
      long at = pos - t.begin();
      t.insert(pos, b);
      auto ti = cover.index_of(t);
      if (!ti) continue;
      SuperForm part = cover.partition()[b] * cover.rewrite(cw.parts[*ti], high[*ti], s[0]);
      if (at % 2)
        acc -= part;
      else
        acc += part;
    }
    rho.parts[r] = std::move(acc);
  });

  CechFamily check = cech_delta(cover, rho, exec);
  long bad = first_difference(check, cw);
  if (bad >= 0)
    raise(ErrorKind::NotACocycle, "partition-of-unity solution does not verify on " +
                                      simplex_str(high[static_cast<std::size_t>(bad)]) +
                                      "; the family is not a coboundary within this cover model");
  return rho;
}

SuperForm descend(const Cover& cover, const CechFamily& w, const Exec& exec) {
  require_family(cover, w, "descend");
  if (w.level != 1) raise(ErrorKind::InvalidArgument, "descend needs a level-1 family");
  CechFamily cw = canonicalize(cover, w, exec);
  CechFamily dw = cech_delta(cover, cw, exec);
  for (std::size_t i = 0; i < dw.parts.size(); ++i)
    if (!dw.parts[i].is_zero())
      raise(ErrorKind::NotACocycle, "components disagree on " + simplex_str(cover.simplices(2)[i]));
  SuperForm g(cover.ring());
  for (std::uint32_t b = 0; b < cover.chart_count(); ++b) g += cover.partition()[b] * cw.parts[b];
  if (!cover.is_global(g)) raise(ErrorKind::NotACocycle, "family does not descend to a global form");
  for (std::uint32_t b = 0; b < cover.chart_count(); ++b)
    if (g != cw.parts[b])
      raise(ErrorKind::NotACocycle, "global form does not restrict to the component on chart " + cover.chart(b).name);
  return g;
}

CechFamily poincare_family(const Cover& cover, const CechFamily& w, const Exec& exec) {
  require_family(cover, w, "poincare_family");
  const auto& simp = cover.simplices(w.level);
  CechFamily out;
  out.level = w.level;
  out.parts.assign(simp.size(), SuperForm(cover.ring()));
  parallel_for(exec, simp.size(), [&](std::size_t i) {
    SuperForm a = cover.rewrite(w.parts[i], simp[i], simp[i][0]);
    out.parts[i] = poincare_solve(a, cover.star(simp[i][0]));
  });
  return out;
}

SuperForm poincare_solve(const Cover& cover, std::uint32_t chart, const SuperForm& a) {
  return poincare_solve(cover.rewrite(a, Simplex{chart}, chart), cover.star(chart));
}

}  // namespace supergerbe
