#include "loopfo/formula.hpp"

#include <functional>
#include <sstream>

#include "loopfo/error.hpp"

namespace loopfo {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? UINT64_MAX : r;
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Falsum: return "Falsum";
    case Kind::Atom: return "Atom";
    case Kind::Equal: return "Equal";
    case Kind::Claim: return "Claim";
    case Kind::Not: return "Not";
    case Kind::And: return "And";
    case Kind::Or: return "Or";
    case Kind::Exists: return "Exists";
    case Kind::Forall: return "Forall";
    case Kind::Label: return "Label";
  }
  return "?";
}

Formula Node::make(Node n) {
  std::size_t h = static_cast<std::size_t>(n.kind);
  h = mix(h, std::hash<std::string>{}(n.name));
  for (const auto& a : n.args) h = mix(h, std::hash<std::string>{}(a));
  h = mix(h, n.label);
  n.size = 1;
  for (const auto& c : n.children) {
    h = mix(h, c.node()->hash);
    n.size = saturating_add(n.size, c.size());
  }
  n.hash = h;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula::Formula() : Formula(falsum()) {}

Formula Formula::falsum() {
  static const Formula bot = Node::make(Node{});
  return bot;
}

Formula Formula::top() { return negation(falsum()); }

Formula Formula::atom(std::string predicate, std::vector<Variable> args) {
  Node n;
  n.kind = Kind::Atom;
  n.name = std::move(predicate);
  n.args = std::move(args);
  return Node::make(std::move(n));
}

Formula Formula::equal(Variable a, Variable b) {
  Node n;
  n.kind = Kind::Equal;
  n.args = {std::move(a), std::move(b)};
  return Node::make(std::move(n));
}

Formula Formula::claim(LabelId id) {
  Node n;
  n.kind = Kind::Claim;
  n.label = id;
  return Node::make(std::move(n));
}

Formula Formula::negation(Formula f) {
  Node n;
  n.kind = Kind::Not;
  n.children = {std::move(f)};
  return Node::make(std::move(n));
}

Formula Formula::binary(Kind k, Formula a, Formula b) {
  Node n;
  n.kind = k;
  n.children = {std::move(a), std::move(b)};
  return Node::make(std::move(n));
}

Formula Formula::conjunction(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
Formula Formula::disjunction(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }

Formula Formula::quantifier(Kind k, Variable x, Formula f) {
  Node n;
  n.kind = k;
  n.name = std::move(x);
  n.children = {std::move(f)};
  return Node::make(std::move(n));
}

Formula Formula::exists(Variable x, Formula f) { return quantifier(Kind::Exists, std::move(x), std::move(f)); }
Formula Formula::forall(Variable x, Formula f) { return quantifier(Kind::Forall, std::move(x), std::move(f)); }

Formula Formula::labeled(LabelId id, Formula f) {
  Node n;
  n.kind = Kind::Label;
  n.label = id;
  n.children = {std::move(f)};
  return Node::make(std::move(n));
}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::predicate() const { return node_->name; }
const std::vector<Variable>& Formula::args() const { return node_->args; }
const Variable& Formula::var() const { return node_->name; }
LabelId Formula::label() const { return node_->label; }
std::size_t Formula::arity() const { return node_->children.size(); }
const Formula& Formula::child(std::size_t i) const { return node_->children.at(i); }
std::uint64_t Formula::size() const { return node_->size; }

bool Formula::operator==(const Formula& other) const {
  const Node* a = node_.get();
  const Node* b = other.node_.get();
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->size != b->size) return false;
  if (a->name != b->name || a->args != b->args || a->label != b->label) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (a->children[i] != b->children[i]) return false;
  return true;
}

OccPath OccPath::child(std::uint32_t i) const {
  OccPath p = *this;
  p.steps.push_back(i);
  return p;
}

OccPath OccPath::parent() const {
  OccPath p = *this;
  if (!p.steps.empty()) p.steps.pop_back();
  return p;
}

OccPath OccPath::concat(const OccPath& rest) const {
  OccPath p = *this;
  p.steps.insert(p.steps.end(), rest.steps.begin(), rest.steps.end());
  return p;
}

bool OccPath::is_prefix_of(const OccPath& other) const {
  if (steps.size() > other.steps.size()) return false;
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (steps[i] != other.steps[i]) return false;
  return true;
}

std::string OccPath::str() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(steps[i]);
  }
  return out;
}

OccPath OccPath::parse(const std::string& dotted) {
  OccPath p;
  if (dotted.empty()) return p;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("malformed occurrence path '" + dotted + "'");
    p.steps.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  }
  return p;
}

bool valid_path(const Formula& f, const OccPath& p) {
  const Formula* cur = &f;
  for (auto s : p.steps) {
    if (s >= cur->arity()) return false;
    cur = &cur->child(s);
  }
  return true;
}

const Formula& subformula(const Formula& f, const OccPath& p) {
  const Formula* cur = &f;
  for (auto s : p.steps) {
    if (s >= cur->arity()) throw InputError("invalid occurrence path '" + p.str() + "'");
    cur = &cur->child(s);
  }
  return *cur;
}

namespace {

Formula with_child(const Formula& f, std::size_t i, Formula c) {
  Node n = *f.node();
  n.children[i] = std::move(c);
  return Node::make(std::move(n));
}

Formula replace_rec(const Formula& f, const OccPath& p, std::size_t depth, const Formula& g) {
  if (depth == p.size()) return g;
  auto s = p.steps[depth];
  if (s >= f.arity()) throw InputError("invalid occurrence path '" + p.str() + "'");
  return with_child(f, s, replace_rec(f.child(s), p, depth + 1, g));
}

void collect_paths(const Formula& f, OccPath& cur, std::vector<OccPath>& out) {
  out.push_back(cur);
  for (std::uint32_t i = 0; i < f.arity(); ++i) {
    cur.steps.push_back(i);
    collect_paths(f.child(i), cur, out);
    cur.steps.pop_back();
  }
}

}  // namespace

Formula replace_at(const Formula& f, const OccPath& p, const Formula& g) { return replace_rec(f, p, 0, g); }

std::vector<OccPath> all_paths(const Formula& f) {
  std::vector<OccPath> out;
  OccPath cur;
  collect_paths(f, cur, out);
  return out;
}

}  // namespace loopfo
