#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopfo/formula.hpp"
#include "loopfo/game.hpp"
#include "loopfo/structure.hpp"
#include "loopfo/syntax.hpp"

namespace loopfo::test {

// Direct recursive evaluation of the clocked game G_n, memoised on
// (subformula, sign, clock, environment). Shares no code with the arena
// builder or the clocked solver.
Verdict oracle_clocked(const Structure& m, const Assignment& s, const Formula& f, unsigned n);

// Depth-first cycle detection on the binary relation `rel`.
bool has_cycle(const Structure& m, const std::string& rel = "E");

// Named corpus plus `random` generated formulas, each with a display name.
std::vector<std::pair<std::string, Formula>> grid_corpus(std::size_t random = 25);

// Calls fn(m, s) for every structure over the formula's vocabulary with at
// most max_domain elements and every assignment of its free variables.
template <class Fn>
std::size_t for_each_case(const Formula& f, std::size_t max_domain, Fn&& fn) {
  const auto fv = free_variables(f);
  const std::vector<Variable> vars(fv.begin(), fv.end());
  std::size_t cases = 0;
  StructureEnumerator it(vocabulary_of(f), max_domain);
  Structure m(1, {});
  while (it.next(m))
    for (const auto& s : all_assignments(vars, m.domain_size())) {
      ++cases;
      fn(m, s);
    }
  return cases;
}

// Strict linear order on {0..n-1} where order[i] is the i-th smallest element.
Structure linear_order(const std::vector<Element>& order);
std::vector<std::vector<Element>> permutations(std::size_t n);

std::string data_path(const std::string& name);

}  // namespace loopfo::test

namespace loopfo::test {

struct Mutation {
  std::string name;
  std::string derivation;
  std::string code;  // expected CheckError code
};

// Single-fault derivations, each rejected with a known error code.
const std::vector<Mutation>& mutation_suite();

}  // namespace loopfo::test
