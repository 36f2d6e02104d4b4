#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "loopfo/formula.hpp"

namespace loopfo {

struct CorpusEntry {
  std::string name;
  std::string text;
};

// Fixed sentences and formulas used by the test suites and `enumerate-test`.
const std::vector<CorpusEntry>& named_corpus();
Formula corpus_formula(const std::string& name);

// Strict linear order over Lt with at least two elements.
std::string linear_order_axioms();

// Random formula over {P/1, E/2, Q/0}, variables {x, y}, labels {L1, L2},
// with at most max_nodes nodes.
Formula random_formula(std::mt19937& rng, std::size_t max_nodes);
// `count` random formulas from a fixed seed.
std::vector<Formula> random_corpus(std::size_t count, std::uint32_t seed = 20240601, std::size_t max_nodes = 12);

}  // namespace loopfo
