#pragma once

#include <string>
#include <vector>

#include "loopfo/formula.hpp"

namespace loopfo {

// Flattened preorder view of a formula's occurrences, shared by the game
// solver, the safety translation and the transforms.
struct Occurrence {
  Formula formula;
  OccPath path;
  int parent = -1;
  int children[2] = {-1, -1};
  int reference = -1;     // claims: node of the reference label, -1 when free
  int bound_var = -1;     // quantifiers: variable index
  int negations = 0;      // Not nodes strictly above
  std::vector<int> args;  // atoms and equalities: variable indices
  // Variables the game can still read from this occurrence before rebinding
  // them, sorted. Equals the free variables except at and around claims,
  // which read whatever their reference label reads.
  std::vector<int> readable;
};

class Occurrences {
 public:
  explicit Occurrences(const Formula& f);

  const Formula& root() const { return nodes_.front().formula; }
  std::size_t size() const { return nodes_.size(); }
  const Occurrence& operator[](std::size_t i) const { return nodes_[i]; }
  const std::vector<Occurrence>& nodes() const { return nodes_; }
  const std::vector<Variable>& variables() const { return vars_; }
  int variable_index(const Variable& v) const;
  int find(const OccPath& p) const;

 private:
  std::vector<Occurrence> nodes_;
  std::vector<Variable> vars_;
};

}  // namespace loopfo
