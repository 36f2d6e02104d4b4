#include "loopfo/approximant.hpp"

#include <cstdlib>
#include <map>
#include <string>
#include <unordered_map>

#include "loopfo/error.hpp"
#include "loopfo/prover.hpp"
#include "loopfo/syntax.hpp"

namespace loopfo {

std::uint64_t node_budget() {
  const char* env = std::getenv("LOOPFO_NODE_BUDGET");
  if (env == nullptr || *env == '\0') return 200000;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw InputError(std::string("LOOPFO_NODE_BUDGET is not a positive integer: ") + env);
}

namespace {

void check_budget(const Formula& f, std::uint64_t budget, const char* what) {
  if (f.size() > budget)
    throw BudgetError(std::string(what) + " exceeds the node budget of " + std::to_string(budget) + " nodes");
}

// One unfolding round: every bound claim becomes a copy of the labeled
// occurrence (of the previous round) it refers to.
Formula unfold_step(const Formula& f, std::map<LabelId, Formula>& env) {
  switch (f.kind()) {
    case Kind::Claim: {
      auto it = env.find(f.label());
      return it == env.end() ? f : it->second;
    }
    case Kind::Label: {
      auto it = env.find(f.label());
      std::optional<Formula> saved;
      if (it != env.end()) saved = it->second;
      env[f.label()] = f;
      Formula body = unfold_step(f.child(), env);
      if (saved)
        env[f.label()] = *saved;
      else
        env.erase(f.label());
      return body == f.child() ? f : Formula::labeled(f.label(), body);
    }
    case Kind::Not: {
      Formula c = unfold_step(f.child(), env);
      return c == f.child() ? f : Formula::negation(c);
    }
    case Kind::Exists:
    case Kind::Forall: {
      Formula c = unfold_step(f.child(), env);
      return c == f.child() ? f : Formula::quantifier(f.kind(), f.var(), c);
    }
    case Kind::And:
    case Kind::Or: {
      Formula a = unfold_step(f.left(), env);
      Formula b = unfold_step(f.right(), env);
      return a == f.left() && b == f.right() ? f : Formula::binary(f.kind(), a, b);
    }
    default:
      return f;
  }
}

class Stripper {
 public:
  Formula run(const Formula& f, bool positive) {
    auto& memo = memo_[positive ? 0 : 1];
    if (auto it = memo.find(f.node()); it != memo.end()) return it->second;
    Formula out = compute(f, positive);
    memo.emplace(f.node(), out);
    return out;
  }

 private:
  Formula compute(const Formula& f, bool positive) {
    switch (f.kind()) {
      case Kind::Claim:
        return positive ? Formula::falsum() : Formula::top();
      case Kind::Label:
        return run(f.child(), positive);
      case Kind::Not:
        return Formula::negation(run(f.child(), !positive));
      case Kind::Exists:
      case Kind::Forall:
        return Formula::quantifier(f.kind(), f.var(), run(f.child(), positive));
      case Kind::And:
      case Kind::Or:
        return Formula::binary(f.kind(), run(f.left(), positive), run(f.right(), positive));
      default:
        return f;
    }
  }

  std::unordered_map<const Node*, Formula> memo_[2];
};

std::vector<Variable> sorted_free(const Formula& f) {
  auto fv = free_variables(f);
  return {fv.begin(), fv.end()};
}

}  // namespace

Formula unfold(const Formula& f, unsigned n, std::uint64_t budget) {
  Formula psi = regularize(f);
  check_budget(psi, budget, "unfolding");
  for (unsigned k = 0; k < n; ++k) {
    std::map<LabelId, Formula> env;
    Formula next = unfold_step(psi, env);
    check_budget(next, budget, "unfolding");
    if (next == psi) break;  // no bound claims left
    psi = next;
  }
  return psi;
}

Formula strip_unfolding(const Formula& psi) { return Stripper{}.run(psi, true); }

Formula approximant(const Formula& f, unsigned n, std::uint64_t budget) { return strip_unfolding(unfold(f, n, budget)); }

ApproximantReport approximant_report(const Formula& f, unsigned n, const Structure* m, const Assignment* s) {
  ApproximantReport r;
  r.n = n;
  Formula psi = unfold(f, n);
  r.unfolding_size = psi.size();
  r.approximant = strip_unfolding(psi);
  if (m != nullptr) {
    Assignment empty;
    const Assignment& a = s != nullptr ? *s : empty;
    check_suitable(*m, a, f);
    r.truth = FoEvaluator(r.approximant).eval(*m, a);
  }
  return r;
}

bool eval_via_approximant(const Structure& m, const Assignment& s, const Formula& f, unsigned n) {
  check_suitable(m, s, f);
  return FoEvaluator(approximant(f, n)).eval(m, s);
}

std::optional<SatWitness> sat_search(const Formula& f, unsigned max_n, std::size_t max_domain) {
  if (max_domain == 0) return std::nullopt;
  const Vocabulary vocab = vocabulary_of(f);
  const std::vector<Variable> vars = sorted_free(f);
  for (unsigned n = 0; n <= max_n; ++n) {
    FoEvaluator eval(approximant(f, n));
    StructureEnumerator en(vocab, max_domain);
    Structure m(1, vocab);
    while (en.next(m)) {
      for (const Assignment& s : all_assignments(vars, m.domain_size()))
        if (eval.eval(m, s)) return SatWitness{m, s, n};
    }
  }
  return std::nullopt;
}

const char* validity_status_name(ValidityResult::Status s) {
  switch (s) {
    case ValidityResult::Status::Proved:
      return "proved";
    case ValidityResult::Status::Refuted:
      return "refuted";
    case ValidityResult::Status::Unknown:
      return "unknown";
  }
  return "unknown";
}

ValidityResult validity_search(const Formula& f, unsigned max_n, Prover& prover, std::size_t max_domain) {
  ValidityResult r;
  const Vocabulary vocab = vocabulary_of(f);
  const std::vector<Variable> vars = sorted_free(f);
  if (max_domain > 0) {
    StructureEnumerator en(vocab, max_domain);
    Structure m(1, vocab);
    while (en.next(m)) {
      for (const Assignment& s : all_assignments(vars, m.domain_size())) {
        Verdict v = verdict_bounded(m, s, f);
        if (v != Verdict::EloiseWins) {
          r.status = ValidityResult::Status::Refuted;
          r.model = m;
          r.assignment = s;
          r.verdict = v;
          r.prover = "small-model";
          return r;
        }
      }
    }
  }
  for (unsigned n = 0; n <= max_n; ++n) {
    if (prover.prove(approximant(f, n)) == ProverStatus::Theorem) {
      r.status = ValidityResult::Status::Proved;
      r.n = n;
      r.prover = prover.name();
      return r;
    }
  }
  return r;
}

}  // namespace loopfo
