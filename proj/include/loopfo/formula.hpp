#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace loopfo {

using LabelId = std::uint32_t;
using Variable = std::string;

// Predicate name -> arity. Equality is built in and never listed.
using Vocabulary = std::map<std::string, unsigned>;

enum class Kind : std::uint8_t {
  Falsum,
  Atom,
  Equal,
  Claim,
  Not,
  And,
  Or,
  Exists,
  Forall,
  Label,
};

const char* kind_name(Kind k);

class Node;

// Immutable formula tree with shared subtrees. Copies are cheap; equality is
// structural.
class Formula {
 public:
  Formula();  // bot

  static Formula falsum();
  static Formula top();  // ~bot
  static Formula atom(std::string predicate, std::vector<Variable> args);
  static Formula equal(Variable a, Variable b);
  static Formula claim(LabelId id);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula exists(Variable x, Formula f);
  static Formula forall(Variable x, Formula f);
  static Formula labeled(LabelId id, Formula f);
  static Formula binary(Kind k, Formula a, Formula b);
  static Formula quantifier(Kind k, Variable x, Formula f);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool is_binary() const { return is(Kind::And) || is(Kind::Or); }
  bool is_quantifier() const { return is(Kind::Exists) || is(Kind::Forall); }
  bool is_unary() const { return is(Kind::Not) || is_quantifier() || is(Kind::Label); }
  // Falsum, FO atoms and equalities.
  bool is_fo_atom() const { return is(Kind::Falsum) || is(Kind::Atom) || is(Kind::Equal); }
  bool is_literal_base() const { return is_fo_atom() || is(Kind::Claim); }

  const std::string& predicate() const;
  const std::vector<Variable>& args() const;  // Atom and Equal
  const Variable& var() const;                 // quantifiers
  LabelId label() const;                       // Claim and Label

  std::size_t arity() const;  // number of children
  const Formula& child(std::size_t i = 0) const;
  const Formula& left() const { return child(0); }
  const Formula& right() const { return child(1); }

  // Tree node count, saturating.
  std::uint64_t size() const;
  const Node* node() const { return node_.get(); }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend class Node;
};

class Node {
 public:
  Kind kind = Kind::Falsum;
  std::string name;             // predicate or bound variable
  std::vector<Variable> args;   // atom / equality arguments
  LabelId label = 0;
  std::vector<Formula> children;
  std::uint64_t size = 1;
  std::size_t hash = 0;

  static Formula make(Node n);
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.node()->hash; }
};

// Occurrence address: child indices from the root.
struct OccPath {
  std::vector<std::uint32_t> steps;

  OccPath() = default;
  OccPath(std::initializer_list<std::uint32_t> s) : steps(s) {}
  explicit OccPath(std::vector<std::uint32_t> s) : steps(std::move(s)) {}

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
  OccPath child(std::uint32_t i) const;
  OccPath parent() const;
  OccPath concat(const OccPath& rest) const;
  bool is_prefix_of(const OccPath& other) const;

  // Dotted form, `0.1.0`; the root is the empty string.
  std::string str() const;
  static OccPath parse(const std::string& dotted);

  auto operator<=>(const OccPath&) const = default;
};

const Formula& subformula(const Formula& f, const OccPath& p);
bool valid_path(const Formula& f, const OccPath& p);
Formula replace_at(const Formula& f, const OccPath& p, const Formula& g);

// Preorder listing of every occurrence path.
std::vector<OccPath> all_paths(const Formula& f);

}  // namespace loopfo
