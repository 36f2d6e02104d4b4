#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "loopfo/approximant.hpp"
#include "loopfo/corpus.hpp"
#include "loopfo/error.hpp"
#include "loopfo/game.hpp"
#include "loopfo/prover.hpp"
#include "loopfo/safety.hpp"
#include "loopfo/syntax.hpp"
#include "loopfo/tptp.hpp"
#include "support.hpp"

using namespace loopfo;

namespace {

bool has_axiom(const SafetyTheory& t, const Formula& f) {
  return std::any_of(t.axioms.begin(), t.axioms.end(), [&](const SafetyAxiom& a) { return a.formula == f; });
}

std::vector<Formula> sentences() {
  std::vector<Formula> out;
  for (const char* t : {"L1: @L1", "~L1: @L1", "L1: @L1 | ~L1: @L1", "exists x. P(x)", "forall x. P(x)", "~bot", "bot",
                        "exists x. L1: (P(x) | @L1)", "forall x. L1: (P(x) & @L1)", "Q | ~Q", "L1: (Q | @L1)",
                        "L1: (Q & @L1)", "L1: ~@L1", "@L1", "exists x. (P(x) & ~P(x))", "forall x. (P(x) | ~P(x))"})
    out.push_back(parse_formula(t));
  return out;
}

}  // namespace

TEST_CASE("safety theory of an atom") {
  const SafetyTheory t = safety_theory(parse_formula("P(x)"));
  CHECK(t.variables == std::vector<Variable>{"x"});
  const std::string& n = t.predicate(0, Sign::Plus);
  CHECK(has_axiom(t, Formula::forall("x", Formula::disjunction(Formula::negation(Formula::atom(n, {"x"})),
                                                                Formula::negation(Formula::atom("P", {"x"}))))));
  CHECK(t.root == Formula::atom(n, {"x"}));
  CHECK(t.extended.count(n) == 1);
}

TEST_CASE("safety theory of claims") {
  const SafetyTheory free = safety_theory(parse_formula("@L1"));
  CHECK(free.axioms.empty());
  for (std::size_t n = 1; n <= 2; ++n) CHECK(verify_safety_small(parse_formula("@L1"), Structure(n, {})));

  const SafetyTheory loop = safety_theory(parse_formula("L1: @L1"));
  const Formula nl = Formula::atom(loop.predicate(0, Sign::Plus), {});
  const Formula nc = Formula::atom(loop.predicate(1, Sign::Plus), {});
  CHECK(has_axiom(loop, Formula::disjunction(Formula::negation(nl), nc)));
  CHECK(has_axiom(loop, Formula::disjunction(Formula::negation(nc), nl)));
  CHECK(verify_safety_small(parse_formula("L1: @L1"), Structure(1, {})));
}

TEST_CASE("verify_safety_small examples") {
  CHECK(!verify_safety_small(parse_formula("~bot"), Structure(1, {})));
  CHECK(!verify_safety_small(parse_formula("bot | ~bot"), Structure(2, {})));
  CHECK(verify_safety_small(parse_formula("exists x. P(x)"), Structure(2, {{"P", 1}})));
  Structure p(2, {{"P", 1}});
  p.set("P", {1});
  CHECK(!verify_safety_small(parse_formula("exists x. P(x)"), p));
}

TEST_CASE("predicate names avoid the base vocabulary") {
  const SafetyTheory t = safety_theory(parse_formula("N_0_p | P(x)"));
  for (const auto& n : t.predicates) CHECK(t.base.count(n) == 0);
}

TEST_CASE("closed-form sizes and variable economy") {
  for (const auto& e : named_corpus()) {
    const Formula f = parse_formula(e.text);
    const SafetyTheory t = safety_theory(f);
    const std::size_t occ = all_paths(f).size();
    CHECK(t.predicates.size() == 2 * occ);
    CHECK(t.axioms.size() == 2 * (occ - free_claims(f).size()));
    CHECK(t.extended.size() == t.base.size() + 2 * occ);
    for (const auto& a : t.axioms) {
      CHECK(all_variables(a.formula).size() <= t.variables.size());
      CHECK(free_variables(a.formula).empty());
    }
    CHECK(free_variables(t.root) == free_variables(f));
    CHECK(t.second_order.rfind("forall", 0) == 0);
  }
}

TEST_CASE("safety translation is faithful on small structures") {
  std::size_t checked = 0;
  for (const auto& f : sentences()) {
    INFO(print_formula(f));
    const SafetyTheory t = safety_theory(f);
    for (const auto& m : enumerate_structures(vocabulary_of(f), 2)) {
      if (safety_bits(t, m.domain_size()) > kSafetyBitCap) continue;
      ++checked;
      CHECK(verify_safety_small(f, m) == (verdict_unbounded(m, {}, f) != Verdict::EloiseWins));
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("safety search cap") {
  Structure m(3, {{"E", 2}});
  CHECK_THROWS_AS(verify_safety_small(corpus_formula("cycle"), m), BudgetError);
}

TEST_CASE("TPTP export") {
  CHECK(export_tptp("f1", "conjecture", parse_formula("P(x) | ~P(x)")) == "fof(f1, conjecture, ![X]: (p(X) | ~p(X))).");
  CHECK(export_tptp("f1", "axiom", parse_formula("bot")) == "fof(f1, axiom, $false).");
  CHECK(export_tptp("f1", "axiom", parse_formula("x = y")) == "fof(f1, axiom, ![X,Y]: (X = Y)).");
  CHECK(export_tptp("f1", "axiom", parse_formula("forall x. exists y. E(x,y)")) ==
        "fof(f1, axiom, ![X]: ?[Y]: e(X,Y)).");
  CHECK_THROWS_AS(export_tptp("f1", "axiom", parse_formula("L1: @L1")), InputError);
}

TEST_CASE("SZS status parsing") {
  CHECK(parse_szs_status("% SZS status Theorem for goal") == ProverStatus::Theorem);
  CHECK(parse_szs_status("# SZS status CounterSatisfiable") == ProverStatus::CounterSatisfiable);
  CHECK(parse_szs_status("SZS status GaveUp") == ProverStatus::Unknown);
  CHECK(parse_szs_status("SZS status Timeout") == ProverStatus::Unknown);
  CHECK_THROWS_AS(parse_szs_status("nothing"), ProverError);
  CHECK_THROWS_AS(parse_szs_status("SZS status Error"), ProverError);
}

TEST_CASE("internal prover") {
  InternalProver p;
  CHECK(propositional_tautology(parse_formula("P(x) | ~P(x)")));
  CHECK(!propositional_tautology(parse_formula("P(x) | ~P(y)")));
  CHECK(p.prove(parse_formula("P(x) | ~P(x)")) == ProverStatus::Theorem);
  CHECK(p.prove(parse_formula("(exists x. P(x)) | forall x. ~P(x)")) == ProverStatus::Theorem);
  CHECK(p.prove(parse_formula("exists x. P(x)")) == ProverStatus::CounterSatisfiable);
  CHECK(p.prove(parse_formula("forall x. exists y. E(x,y)")) == ProverStatus::CounterSatisfiable);
  const Formula phi2 = approximant(corpus_formula("cycle"), 2);
  CHECK(p.prove(Formula::disjunction(Formula::negation(phi2), phi2)) == ProverStatus::Theorem);
}

TEST_CASE("external prover hook") {
  ExternalProver ok(test::data_path("fake_prover.sh"));
  CHECK(ok.prove(parse_formula("P(x) | ~P(x)")) == ProverStatus::Theorem);
  ExternalProver templ("sh " + test::data_path("fake_prover.sh") + " {}");
  CHECK(templ.prove(parse_formula("P(x)")) == ProverStatus::Theorem);
  ExternalProver missing("/nonexistent/prover");
  CHECK_THROWS_AS(missing.prove(parse_formula("P(x)")), ProverError);
  CHECK(make_prover(std::nullopt)->name() == "internal");
  CHECK(make_prover(std::string("true"))->name() == "external");
}
