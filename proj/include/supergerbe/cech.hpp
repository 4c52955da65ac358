#pragma once

#include <functional>
#include <vector>

#include "supergerbe/cover.hpp"
#include "supergerbe/parallel.hpp"

namespace supergerbe {

// One form per nerve simplex with `level` vertices, aligned with
// cover.simplices(level). Component on s is written in the generators of s[0].
struct CechFamily {
  int level = 0;
  std::vector<SuperForm> parts;
};

CechFamily zero_family(const Cover& cover, int level);
CechFamily global_family(const Cover& cover, const SuperForm& g, int level);
// Throws MissingComponent on a size mismatch.
void require_family(const Cover& cover, const CechFamily& f, const std::string& what);
// Rewrites every component into the generators of its first chart.
CechFamily canonicalize(const Cover& cover, const CechFamily& f, const Exec& exec = {});

CechFamily operator+(const CechFamily& a, const CechFamily& b);
CechFamily operator-(const CechFamily& a, const CechFamily& b);
CechFamily operator-(const CechFamily& a);
CechFamily operator*(const Gaussian& c, const CechFamily& a);
CechFamily operator*(const Scalar& c, const CechFamily& a);
bool is_zero(const CechFamily& f);
// First simplex index where the families differ, or -1.
long first_difference(const CechFamily& a, const CechFamily& b);

CechFamily family_map(const CechFamily& f, const std::function<SuperForm(const SuperForm&)>& fn,
                      const Exec& exec = {});

// (delta w)_s = sum_i (-1)^i w_{s minus s_i}, 0-based.
CechFamily cech_delta(const Cover& cover, const CechFamily& w, const Exec& exec = {});
CechFamily family_d(const CechFamily& w, const Exec& exec = {});

// rho with delta rho = w for level >= 2, from rho_s = sum_b phi_b w_{b s}.
// Throws NotACocycle when delta w != 0 or the result does not verify.
CechFamily cech_delta_solve(const Cover& cover, const CechFamily& w, const Exec& exec = {});
// Level-1 case: the global form sum_b phi_b w_b, checked to restrict to w.
SuperForm descend(const Cover& cover, const CechFamily& w, const Exec& exec = {});

// sigma with d sigma = a on one chart. Throws NotClosed, NonPolynomialBody.
SuperForm poincare_solve(const SuperForm& a, const StarData& star);
SuperForm poincare_solve(const Cover& cover, std::uint32_t chart, const SuperForm& a);
CechFamily poincare_family(const Cover& cover, const CechFamily& w, const Exec& exec = {});

}  // namespace supergerbe
