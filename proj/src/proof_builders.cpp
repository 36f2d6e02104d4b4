#include "loopfo/proof_builders.hpp"

#include <algorithm>
#include <stdexcept>

#include "loopfo/error.hpp"
#include "loopfo/syntax.hpp"
#include "loopfo/transform.hpp"

namespace loopfo {

namespace {

class Builder {
 public:
  Builder(const Formula& premise, std::uint64_t budget) : f_(premise), budget_(budget) {
    Step s;
    s.id = "1";
    s.type = StepType::Premise;
    s.formula = premise;
    d_.steps.push_back(std::move(s));
  }

  void step(RuleId rule, const OccPath& path, RuleParams params, std::optional<Formula> conclusion = {}) {
    Formula out = conclusion ? *conclusion : apply_rewrite(rule, f_, path, params);
    if (out.size() > budget_)
      throw BudgetError("derivation formula exceeds the node budget of " + std::to_string(budget_) + " nodes");
    Step s;
    s.id = std::to_string(d_.steps.size() + 1);
    s.type = StepType::Inference;
    s.rule = rule;
    s.inputs = {d_.steps.back().id};
    s.path = path;
    s.params = std::move(params);
    s.formula = out;
    d_.steps.push_back(std::move(s));
    f_ = out;
  }

  const Formula& formula() const { return f_; }
  Derivation take() { return std::move(d_); }

 private:
  Formula f_;
  std::uint64_t budget_;
  Derivation d_;
};

RuleParams with_label(LabelId id) {
  RuleParams p;
  p.label = id;
  return p;
}

void collect(const Formula& f, OccPath& path, Kind k, std::vector<OccPath>& out) {
  if (f.is(k)) out.push_back(path);
  for (std::uint32_t i = 0; i < f.arity(); ++i) {
    path.steps.push_back(i);
    collect(f.child(i), path, k, out);
    path.steps.pop_back();
  }
}

std::vector<OccPath> paths_of(const Formula& f, Kind k) {
  std::vector<OccPath> out;
  OccPath p;
  collect(f, p, k, out);
  return out;
}

Formula strip_labels(const Formula& f) {
  switch (f.kind()) {
    case Kind::Label:
      return strip_labels(f.child());
    case Kind::Not:
      return Formula::negation(strip_labels(f.child()));
    case Kind::Exists:
    case Kind::Forall:
      return Formula::quantifier(f.kind(), f.var(), strip_labels(f.child()));
    case Kind::And:
    case Kind::Or:
      return Formula::binary(f.kind(), strip_labels(f.left()), strip_labels(f.right()));
    default:
      return f;
  }
}

}  // namespace

Derivation derivation_from_rewrites(const Formula& premise, const std::vector<Rewrite>& steps) {
  Builder b(premise, UINT64_MAX);
  for (const auto& r : steps) b.step(r.rule, r.path, r.params, r.result);
  return b.take();
}

std::pair<Derivation, Derivation> build_nnf_derivation(const Formula& f, std::uint64_t budget) {
  NnfResult nnf = to_strong_nnf(f, budget);
  Derivation forward = derivation_from_rewrites(f, nnf.trace);

  // Formulas before each trace step: before[i] is the input of trace[i].
  std::vector<Formula> before;
  before.push_back(f);
  for (const auto& r : nnf.trace) before.push_back(r.result);

  Builder back(nnf.result, budget);
  for (std::size_t i = nnf.trace.size(); i-- > 0;) {
    const Rewrite& r = nnf.trace[i];
    const Formula& prev = before[i];
    if (r.rule == RuleId::DualNotNot && i > 0 && nnf.trace[i - 1].rule == RuleId::CLFreeElim &&
        nnf.trace[i - 1].path == r.path.child(0)) {
      // Free-claim elimination: re-negate the claim directly.
      RuleParams p;
      p.subst.push_back(subformula(before[i - 1], r.path));
      back.step(RuleId::CLFreeElim, r.path, p, before[i - 1]);
      --i;
      continue;
    }
    RuleParams p = r.params;
    RuleId rule = r.rule;
    if (is_duality(rule)) {
      p.reverse = !p.reverse;
    } else if (rule == RuleId::LDualIntro) {
      rule = RuleId::LDualIntroRev;
    } else if (rule == RuleId::SubstCopyElim) {
      rule = RuleId::SubstCopyElimRev;
    } else if (rule == RuleId::SubstShift) {
      rule = RuleId::SubstShiftRev;
    } else if (rule == RuleId::LCRename) {
      p.label = subformula(prev, r.path).label();
    } else {
      throw std::logic_error(std::string("cannot reverse ") + rule_name(rule));
    }
    back.step(rule, r.path, p, prev);
  }
  return {std::move(forward), back.take()};
}

Derivation build_approximant_derivation(const Formula& f, unsigned n, std::uint64_t budget) {
  if (!is_strong_nnf(f)) throw InputError("build_approximant_derivation expects a formula in strong negation normal form");
  const Formula phi_n = approximant(f, n, budget);

  // Core: regular, dummy-free, free-claim-free.
  const auto reg_steps = regularization_steps(f);
  std::vector<Formula> reg_chain{f};
  for (const auto& [p, id] : reg_steps) reg_chain.push_back(rename_label(reg_chain.back(), p, id));
  const Formula f_reg = reg_chain.back();

  std::vector<std::pair<OccPath, LabelId>> dummies;  // in removal order
  Formula f_nodummy = f_reg;
  {
    auto labels = paths_of(f_reg, Kind::Label);
    for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
      if (!is_dummy_label(f_nodummy, *it)) continue;
      dummies.emplace_back(*it, subformula(f_nodummy, *it).label());
      f_nodummy = replace_at(f_nodummy, *it, subformula(f_nodummy, *it).child());
    }
  }
  const auto free = free_claims(f_nodummy);
  Formula core = f_nodummy;
  for (const auto& p : free) core = replace_at(core, p, Formula::falsum());

  // Chain core -> F by renamings and single-claim shifts following the
  // claim positions of the unfoldings.
  std::vector<Rewrite> chain;
  Formula F = core;
  auto record = [&](RuleId rule, const OccPath& path, RuleParams p) {
    Formula out = apply_rewrite(rule, F, path, p);
    if (out.size() > budget) throw BudgetError("derivation formula exceeds the node budget");
    chain.push_back(Rewrite{rule, path, std::move(p), out});
    F = out;
  };
  // Walks F along p, shifting every claim met on a proper prefix (F lags
  // behind the unfolding there) and, with `at_end`, the claim at p itself.
  auto reach = [&](const OccPath& p, bool at_end) {
    OccPath q;
    for (std::size_t i = 0;;) {
      const Formula& g = subformula(F, q);
      if (g.is(Kind::Claim) && (i < p.size() || at_end)) {
        for (const auto& [lp, id] : regularization_steps(F)) record(RuleId::LCRename, lp, with_label(id));
        auto ref = resolve_reference(F, q);
        if (!ref) throw std::logic_error("approximant derivation: free claim inside the unfolding");
        RuleParams shift;
        shift.claims = {q};
        record(RuleId::SubstShift, *ref, shift);
        continue;
      }
      if (i == p.size()) return;
      if (p.steps[i] >= g.arity()) throw std::logic_error("approximant derivation: unfolding position missing");
      q = q.child(p.steps[i++]);
    }
  };
  for (unsigned k = 0; k < n; ++k)
    for (const auto& p : paths_of(unfold(core, k, budget), Kind::Claim)) reach(p, true);

  const auto top_claims = paths_of(unfold(core, n, budget), Kind::Claim);
  for (const auto& p : top_claims) reach(p, false);
  Formula F_bot = F;
  for (const auto& p : top_claims) {
    if (!valid_path(F_bot, p)) throw std::logic_error("approximant derivation: unfolding position missing");
    F_bot = replace_at(F_bot, p, Formula::falsum());
  }
  if (!(strip_labels(F_bot) == phi_n) || !paths_of(F_bot, Kind::Claim).empty())
    throw std::logic_error("approximant derivation: shifted formula does not match the approximant");

  Builder b(phi_n, budget);
  for (const auto& lp : paths_of(F_bot, Kind::Label))
    b.step(RuleId::LDummyIntroElim, lp, with_label(subformula(F_bot, lp).label()));
  if (!top_claims.empty()) {
    RuleParams bot;
    bot.claims = top_claims;
    for (const auto& p : top_claims) bot.subst.push_back(subformula(F, p));
    b.step(RuleId::BotElim, {}, bot);
  }
  for (std::size_t i = chain.size(); i-- > 0;) {
    const Rewrite& r = chain[i];
    const Formula& prev = i == 0 ? core : chain[i - 1].result;
    if (r.rule == RuleId::SubstShift) {
      b.step(RuleId::SubstShiftRev, r.path, r.params, prev);
    } else {
      b.step(RuleId::LCRename, r.path, with_label(subformula(prev, r.path).label()), prev);
    }
  }
  if (!free.empty()) {
    RuleParams bot;
    bot.claims = free;
    for (const auto& p : free) bot.subst.push_back(subformula(f_nodummy, p));
    b.step(RuleId::BotElim, {}, bot);
  }
  for (auto it = dummies.rbegin(); it != dummies.rend(); ++it) b.step(RuleId::LDummyIntroElim, it->first, with_label(it->second));
  for (std::size_t i = reg_steps.size(); i-- > 0;) {
    const OccPath& p = reg_steps[i].first;
    b.step(RuleId::LCRename, p, with_label(subformula(reg_chain[i], p).label()), reg_chain[i]);
  }
  if (!(b.formula() == f)) throw std::logic_error("approximant derivation does not end in the input formula");
  return b.take();
}

}  // namespace loopfo
