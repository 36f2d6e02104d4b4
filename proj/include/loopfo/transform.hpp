#pragma once

#include <cstdint>
#include <vector>

#include "loopfo/approximant.hpp"
#include "loopfo/formula.hpp"
#include "loopfo/rules.hpp"

namespace loopfo {

// Negations only on atoms and claims; `~top` counts as a negated atom.
bool is_weak_nnf(const Formula& f);
// Negations only on FO atoms (bot, predicates, equalities, and `top`).
bool is_strong_nnf(const Formula& f);

// Single duality step at p; `rule` must be one of the Dual* rules.
Formula apply_duality(const Formula& f, const OccPath& p, RuleId rule, bool reverse = false);

// Leftmost-outermost duality rewriting up to weak NNF. Appends the steps to
// `trace` when given.
Formula to_weak_nnf(const Formula& f, std::vector<Rewrite>* trace = nullptr);

// Innermost labels with a negated claim of their own in strict scope, in
// preorder. Throws InputError unless f is in weak NNF.
std::vector<OccPath> find_ilsl(const Formula& f);

struct NnfResult {
  Formula result;
  std::vector<Rewrite> trace;
  std::size_t rounds = 0;
};

NnfResult to_strong_nnf(const Formula& f, std::uint64_t budget = node_budget());

}  // namespace loopfo
