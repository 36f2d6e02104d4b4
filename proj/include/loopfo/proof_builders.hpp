#pragma once

#include <utility>
#include <vector>

#include "loopfo/approximant.hpp"
#include "loopfo/proof.hpp"

namespace loopfo {

// Premise followed by one inference per rewrite, each using the previous step.
Derivation derivation_from_rewrites(const Formula& premise, const std::vector<Rewrite>& steps);

// Derivations f |- f* and f* |- f for f* = to_strong_nnf(f).
std::pair<Derivation, Derivation> build_nnf_derivation(const Formula& f, std::uint64_t budget = node_budget());

// Derivation of f from the premise approximant(f, n). Requires strong NNF.
Derivation build_approximant_derivation(const Formula& f, unsigned n, std::uint64_t budget = node_budget());

}  // namespace loopfo
