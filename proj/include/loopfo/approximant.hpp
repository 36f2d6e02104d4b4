#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "loopfo/formula.hpp"
#include "loopfo/game.hpp"
#include "loopfo/structure.hpp"

namespace loopfo {

class Prover;

// Node budget for unfoldings and normal forms: LOOPFO_NODE_BUDGET or 200000.
std::uint64_t node_budget();

// n-th unfolding; round 0 is the deterministic regularisation.
Formula unfold(const Formula& f, unsigned n, std::uint64_t budget = node_budget());
// Drops labels and replaces positive claims by bot and negative ones by ~bot.
Formula strip_unfolding(const Formula& psi);
Formula approximant(const Formula& f, unsigned n, std::uint64_t budget = node_budget());

struct ApproximantReport {
  unsigned n = 0;
  std::uint64_t unfolding_size = 0;
  Formula approximant;
  std::optional<bool> truth;
};

ApproximantReport approximant_report(const Formula& f, unsigned n, const Structure* m = nullptr,
                                     const Assignment* s = nullptr);

bool eval_via_approximant(const Structure& m, const Assignment& s, const Formula& f, unsigned n);

struct SatWitness {
  Structure model;
  Assignment assignment;
  unsigned n;
};

// First (n, structure, assignment) in deterministic order whose approximant is
// true. nullopt means the bounds were exhausted, not that f is unsatisfiable.
std::optional<SatWitness> sat_search(const Formula& f, unsigned max_n, std::size_t max_domain);

struct ValidityResult {
  enum class Status { Proved, Refuted, Unknown };
  Status status = Status::Unknown;
  unsigned n = 0;                        // Proved
  std::optional<Structure> model;        // Refuted
  std::optional<Assignment> assignment;  // Refuted
  Verdict verdict = Verdict::Undetermined;  // bounded verdict on the countermodel
  std::string prover;                    // which prover certified the result
};

const char* validity_status_name(ValidityResult::Status s);

// Small-model refutation over structures with at most max_domain elements,
// then approximant validity via the prover for n = 0..max_n.
ValidityResult validity_search(const Formula& f, unsigned max_n, Prover& prover, std::size_t max_domain = 3);

}  // namespace loopfo
