#include "loopfo/transform.hpp"

#include <optional>
#include <stdexcept>

#include "loopfo/error.hpp"
#include "loopfo/syntax.hpp"

namespace loopfo {

namespace {

bool is_top(const Formula& f) { return f.is(Kind::Not) && f.child().is(Kind::Falsum); }

bool nnf_rec(const Formula& f, bool strong) {
  if (f.is(Kind::Not)) {
    const Formula& c = f.child();
    if (strong ? (c.is_fo_atom() || is_top(c)) : (c.is_literal_base() || is_top(c))) return true;
    return false;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (!nnf_rec(f.child(i), strong)) return false;
  return true;
}

bool find_weak_redex(const Formula& f, OccPath& path) {
  if (f.is(Kind::Not) && !f.child().is_literal_base() && !is_top(f.child())) return true;
  for (std::uint32_t i = 0; i < f.arity(); ++i) {
    path.steps.push_back(i);
    if (find_weak_redex(f.child(i), path)) return true;
    path.steps.pop_back();
  }
  return false;
}

bool find_negated_claim(const Formula& f, OccPath& path) {
  if (f.is(Kind::Not) && f.child().is(Kind::Claim)) return true;
  for (std::uint32_t i = 0; i < f.arity(); ++i) {
    path.steps.push_back(i);
    if (find_negated_claim(f.child(i), path)) return true;
    path.steps.pop_back();
  }
  return false;
}

bool switching(const Formula& f, const OccPath& label) {
  for (const auto& q : strict_scope_claims(f, label))
    if (subformula(f, q.parent()).is(Kind::Not)) return true;
  return false;
}

// Collects innermost switching labels under `path`; returns whether the
// subtree contains any switching label.
bool ilsl_rec(const Formula& root, const Formula& f, OccPath& path, std::vector<OccPath>& out) {
  std::vector<OccPath> inner;
  bool below = false;
  for (std::uint32_t i = 0; i < f.arity(); ++i) {
    path.steps.push_back(i);
    below = ilsl_rec(root, f.child(i), path, inner) || below;
    path.steps.pop_back();
  }
  if (f.is(Kind::Label) && !below && switching(root, path)) {
    out.push_back(path);
    return true;
  }
  out.insert(out.end(), inner.begin(), inner.end());
  return below || (f.is(Kind::Label) && switching(root, path));
}

class Tracer {
 public:
  Tracer(Formula f, std::vector<Rewrite>* trace, std::uint64_t budget)
      : f_(std::move(f)), trace_(trace), budget_(budget) {}

  void step(RuleId rule, const OccPath& path, RuleParams params = {}) {
    f_ = apply_rewrite(rule, f_, path, params);
    if (f_.size() > budget_)
      throw BudgetError("normal form exceeds the node budget of " + std::to_string(budget_) + " nodes");
    if (trace_) trace_->push_back(Rewrite{rule, path, std::move(params), f_});
  }
  const Formula& formula() const { return f_; }
  void set(Formula f) { f_ = std::move(f); }

 private:
  Formula f_;
  std::vector<Rewrite>* trace_;
  std::uint64_t budget_;
};

}  // namespace

bool is_weak_nnf(const Formula& f) { return nnf_rec(f, false); }
bool is_strong_nnf(const Formula& f) { return nnf_rec(f, true); }

Formula apply_duality(const Formula& f, const OccPath& p, RuleId rule, bool reverse) {
  if (!is_duality(rule)) throw InputError(std::string(rule_name(rule)) + " is not a duality rule");
  RuleParams prm;
  prm.reverse = reverse;
  return apply_rewrite(rule, f, p, prm);
}

Formula to_weak_nnf(const Formula& f, std::vector<Rewrite>* trace) {
  Tracer t(f, trace, UINT64_MAX);
  while (true) {
    OccPath p;
    if (!find_weak_redex(t.formula(), p)) break;
    t.step(*duality_redex(subformula(t.formula(), p)), p);
  }
  return t.formula();
}

std::vector<OccPath> find_ilsl(const Formula& f) {
  if (!is_weak_nnf(f)) throw InputError("find_ilsl expects a formula in weak negation normal form");
  std::vector<OccPath> out;
  OccPath path;
  ilsl_rec(f, f, path, out);
  return out;
}

NnfResult to_strong_nnf(const Formula& f, std::uint64_t budget) {
  NnfResult r;
  if (f.size() > budget) throw BudgetError("input exceeds the node budget");
  Tracer t(f, &r.trace, budget);
  t.set(to_weak_nnf(f, &r.trace));
  const std::size_t depth = label_nesting_depth(f);
  while (true) {
    const auto ilsls = find_ilsl(t.formula());
    if (ilsls.empty()) break;
    if (++r.rounds > depth) throw std::logic_error("strong NNF did not terminate within the label nesting depth");
    for (const auto& p : ilsls) {
      RuleParams dual;
      dual.fresh = fresh_label(t.formula());
      t.step(RuleId::LDualIntro, p, dual);
      for (const auto& [lp, id] : regularization_steps(t.formula())) {
        RuleParams ren;
        ren.label = id;
        t.step(RuleId::LCRename, lp, ren);
      }
      RuleParams copy;
      copy.claims = strict_scope_claims(t.formula(), p);
      if (!copy.claims.empty()) t.step(RuleId::SubstCopyElim, p, copy);
      const auto before = r.trace.size();
      t.set(to_weak_nnf(t.formula(), &r.trace));
      for (auto i = before; i < r.trace.size(); ++i)
        if (r.trace[i].result.size() > budget) throw BudgetError("normal form exceeds the node budget");
    }
  }
  while (true) {
    OccPath p;
    if (!find_negated_claim(t.formula(), p)) break;
    const Formula claim = subformula(t.formula(), p.child(0));
    RuleParams free;
    free.subst.push_back(Formula::negation(claim));
    t.step(RuleId::CLFreeElim, p.child(0), free);
    t.step(RuleId::DualNotNot, p);
  }
  if (!is_strong_nnf(t.formula())) throw std::logic_error("strong NNF procedure left a negated non-atom");
  r.result = t.formula();
  return r;
}

}  // namespace loopfo
