#include "loopfo/occurrences.hpp"

#include <algorithm>
#include <set>

#include "loopfo/syntax.hpp"

namespace loopfo {

namespace {

void flatten(const Formula& f, int parent, OccPath& path, int negs, std::vector<Occurrence>& out) {
  int id = static_cast<int>(out.size());
  Occurrence o;
  o.formula = f;
  o.path = path;
  o.parent = parent;
  o.negations = negs;
  out.push_back(std::move(o));
  int inner_negs = negs + (f.is(Kind::Not) ? 1 : 0);
  for (std::uint32_t i = 0; i < f.arity(); ++i) {
    out[id].children[i] = static_cast<int>(out.size());
    path.steps.push_back(i);
    flatten(f.child(i), id, path, inner_negs, out);
    path.steps.pop_back();
  }
}

}  // namespace

Occurrences::Occurrences(const Formula& f) {
  vars_ = all_variables(f);
  OccPath path;
  flatten(f, -1, path, 0, nodes_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    Occurrence& o = nodes_[i];
    const Formula& g = o.formula;
    if (g.is_quantifier()) o.bound_var = variable_index(g.var());
    for (const auto& a : g.args()) o.args.push_back(variable_index(a));
    if (g.is(Kind::Claim)) {
      for (int p = o.parent; p >= 0; p = nodes_[p].parent) {
        const Formula& anc = nodes_[p].formula;
        if (anc.is(Kind::Label) && anc.label() == g.label()) {
          o.reference = p;
          break;
        }
      }
    }
  }
  // Least fixpoint of the readable-variable equations; children have larger
  // preorder ids, so a reverse sweep settles everything except claims.
  std::vector<std::set<int>> need(nodes_.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = nodes_.size(); k-- > 0;) {
      const Occurrence& o = nodes_[k];
      std::set<int> s;
      switch (o.formula.kind()) {
        case Kind::Atom:
        case Kind::Equal: s.insert(o.args.begin(), o.args.end()); break;
        case Kind::Claim:
          if (o.reference >= 0) s = need[o.reference];
          break;
        case Kind::Exists:
        case Kind::Forall:
          s = need[o.children[0]];
          s.erase(o.bound_var);
          break;
        case Kind::Falsum: break;
        default:
          for (int c : o.children)
            if (c >= 0) s.insert(need[c].begin(), need[c].end());
      }
      if (s != need[k]) {
        need[k] = std::move(s);
        changed = true;
      }
    }
  }
  for (std::size_t k = 0; k < nodes_.size(); ++k) nodes_[k].readable.assign(need[k].begin(), need[k].end());
}

int Occurrences::variable_index(const Variable& v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

int Occurrences::find(const OccPath& p) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].path == p) return static_cast<int>(i);
  return -1;
}

}  // namespace loopfo
