#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "supergerbe/superform.hpp"

namespace supergerbe {

SuperFunction sf_mul(const SuperFunction& a, const SuperFunction& b);
SuperFunction sf_exp(const SuperFunction& n);
SuperFunction sf_log(const SuperFunction& u);

SuperForm wedge(const SuperForm& a, const SuperForm& b);
SuperForm d(const SuperForm& a);
SuperForm d(const Scalar& s);

// (body, soul): soul weight zero versus positive.
std::pair<SuperForm, SuperForm> body_soul_split(const SuperForm& a);
SuperForm body(const SuperForm& a);
SuperForm soul(const SuperForm& a);
SuperFunction body_function(const SuperFunction& f);
bool is_pure_soul(const SuperForm& a);
bool is_pure_body(const SuperForm& a);

// Contraction with the odd Euler field sum_j theta_j d/dtheta_j.
SuperForm euler_contract(const SuperForm& a);

// K with dK + Kd = id on pure-soul forms.
SuperForm soul_homotopy(const SuperForm& a);

// Coordinate-level map between chart presentations. Pulls back expressions
// over `target` to expressions over `source`. Missing images mean identity and
// require target == source.
struct ChartMap {
  RingPtr target;
  RingPtr source;
  std::vector<std::optional<SuperFunction>> even;  // indexed by generator id, 0 unused
  std::vector<std::optional<SuperFunction>> odd;
  std::vector<std::optional<SuperForm>> forms;

  static ChartMap identity(RingPtr ring);
  // theta -> 0 on the same ring.
  static ChartMap body_inclusion(RingPtr ring);

  void set_even(const std::string& name, SuperFunction image);
  void set_odd(const std::string& name, SuperFunction image);
};

// Throws ParityMismatch / RelationViolation.
void validate_chart_map(const ChartMap& phi);

SuperFunction pullback(const Scalar& s, const ChartMap& phi);
SuperFunction pullback(const SuperFunction& f, const ChartMap& phi);
SuperForm pullback(const SuperForm& a, const ChartMap& phi);

}  // namespace supergerbe
