#pragma once

#include <string>
#include <vector>

#include "loopfo/formula.hpp"
#include "loopfo/game.hpp"
#include "loopfo/structure.hpp"

namespace loopfo {

struct SafetyAxiom {
  std::string name;
  Formula formula;
  OccPath occurrence;
  Sign sign;
};

// First-order theory whose expansions mark positions from which Eloise
// cannot force a win. One k-ary predicate per (occurrence, sign), k being
// the number of variables of the source formula.
struct SafetyTheory {
  Vocabulary base;
  Vocabulary extended;
  std::vector<Variable> variables;
  std::vector<std::string> predicates;  // index 2*i for sign +, 2*i+1 for sign -
  std::vector<OccPath> occurrences;     // preorder
  std::vector<SafetyAxiom> axioms;      // excludes the root sentence
  Formula root;                         // free variables = those of the source
  std::string second_order;             // universal second-order reading

  const std::string& predicate(std::size_t occ, Sign s) const { return predicates[2 * occ + (s == Sign::Minus)]; }
  // Conjunction of all axioms and the root sentence.
  Formula conjunction() const;
};

SafetyTheory safety_theory(const Formula& f);

inline constexpr std::size_t kSafetyBitCap = 12;

// Number of relation bits an expansion of m has to fix.
std::size_t safety_bits(const SafetyTheory& t, std::size_t domain_size);

// Whether some expansion of m satisfies the theory (with s for the free
// variables). Exhaustive; throws BudgetError above kSafetyBitCap bits.
bool verify_safety_small(const Formula& f, const Structure& m, const Assignment& s = {});

}  // namespace loopfo
