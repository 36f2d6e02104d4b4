#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "loopfo/formula.hpp"

namespace loopfo {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;
using Assignment = std::map<Variable, Element>;

// Finite relational structure over the domain {0, ..., n-1}. Each relation is
// stored as a truth table indexed by the base-n encoding of the tuple.
class Structure {
 public:
  Structure(std::size_t domain_size, Vocabulary vocab);

  std::size_t domain_size() const { return n_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  unsigned arity(const std::string& pred) const;

  bool holds(const std::string& pred, const Tuple& t) const;
  void set(const std::string& pred, const Tuple& t, bool value = true);
  std::vector<Tuple> tuples(const std::string& pred) const;
  const std::vector<std::uint8_t>& table(const std::string& pred) const;
  std::vector<std::uint8_t>& table(const std::string& pred);

  // Same domain, vocabulary extended with `extra` (all new relations empty).
  Structure expand(const Vocabulary& extra) const;

  bool operator==(const Structure& other) const = default;

 private:
  std::size_t index(const std::string& pred, const Tuple& t) const;

  std::size_t n_;
  Vocabulary vocab_;
  std::map<std::string, std::vector<std::uint8_t>> tables_;
};

Structure parse_structure(std::string_view text);
std::string print_structure(const Structure& m);

Assignment parse_assignment(std::string_view text);
std::string print_assignment(const Assignment& s);

// Throws InputError unless every predicate of f is interpreted with the right
// arity and s covers the free variables of f with in-range values.
void check_suitable(const Structure& m, const Assignment& s, const Formula& f);

// Classical truth of a pure FO formula.
bool tarski_eval(const Structure& m, const Assignment& s, const Formula& f);

// Compiled pure-FO formula for repeated evaluation. Shared subtrees are
// compiled once.
class FoEvaluator {
 public:
  explicit FoEvaluator(const Formula& f);
  bool eval(const Structure& m, const Assignment& s) const;
  const std::vector<Variable>& variables() const { return vars_; }

 private:
  struct Op {
    Kind kind;
    int a = -1, b = -1;  // children
    int var = -1;
    int pred = -1;
    std::vector<int> args;
  };
  bool run(int op, std::vector<Element>& env, const std::vector<const std::vector<std::uint8_t>*>& tables,
           std::size_t n) const;

  std::vector<Op> ops_;
  int root_ = 0;
  std::vector<Variable> vars_;
  std::vector<std::string> preds_;
  std::vector<unsigned> pred_arity_;
};

// Deterministic stream of every structure over vocab with 1..max_size
// elements: by size, then by the binary counter over the relation bits of the
// predicates in name order.
class StructureEnumerator {
 public:
  StructureEnumerator(Vocabulary vocab, std::size_t max_size, std::size_t min_size = 1);
  bool next(Structure& out);

 private:
  bool start_size();

  Vocabulary vocab_;
  std::size_t max_size_;
  std::size_t size_;
  std::uint64_t counter_ = 0;
  std::uint64_t limit_ = 0;
  std::size_t bits_ = 0;
  bool started_ = false;
};

std::vector<Structure> enumerate_structures(const Vocabulary& vocab, std::size_t max_size);
// Closed form: sum over n of prod over predicates of 2^(n^arity), saturating.
std::uint64_t structure_count(const Vocabulary& vocab, std::size_t max_size);

// All assignments of the given variables into the domain, in lexicographic
// order of values.
std::vector<Assignment> all_assignments(const std::vector<Variable>& vars, std::size_t domain_size);

}  // namespace loopfo
