#pragma once

#include <string>
#include <utility>
#include <vector>

#include "supergerbe/gerbe.hpp"

namespace supergerbe {

// i*: theta and dtheta set to zero componentwise.
GerbeCocycle gerbe_body(const GerbeCocycle& g);
// p*: the body data read on the full cover. Throws SoulContamination.
GerbeCocycle gerbe_p_pullback(const GerbeCocycle& gb);
bool has_soul(const GerbeCocycle& g);

// K of the soul part of the curvature.
SuperForm beta_from_curvature(const GerbeCocycle& g, const Exec& exec = {});
// K(d beta): equal for two pure-soul forms iff they differ by an exact form.
SuperForm canonical_beta(const SuperForm& beta);

struct DecompositionResult {
  GerbeCocycle body;
  SuperForm beta;
  TrivializationCertificate certificate;  // for G tensor dual(p* body tensor I_beta)
};

// G ~ p* G_b tensor I_beta, checked before returning.
DecompositionResult decompose(const GerbeCocycle& g, const Exec& exec = {});
// The gerbe whose trivialization the certificate witnesses.
GerbeCocycle decomposition_difference(const GerbeCocycle& g, const DecompositionResult& r);
Report verify_decomposition(const GerbeCocycle& g, const DecompositionResult& r, const Exec& exec = {});

// Flat members: G tensor dual(p* i* G) trivializes and i* p* i* G = i* G.
Report flat_iso_check(const std::vector<std::pair<std::string, GerbeCocycle>>& corpus, const Exec& exec = {});

}  // namespace supergerbe
