#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopfo/approximant.hpp"
#include "loopfo/corpus.hpp"
#include "loopfo/error.hpp"
#include "loopfo/game.hpp"
#include "loopfo/proof.hpp"
#include "loopfo/proof_builders.hpp"
#include "loopfo/syntax.hpp"
#include "loopfo/transform.hpp"
#include "support.hpp"

using namespace loopfo;

namespace {

CheckResult check_text(const std::string& text) { return check_derivation(parse_derivation(text)); }

Formula rewrite(RuleId r, const std::string& f, const std::string& path, const std::string& params) {
  return apply_rewrite(r, parse_formula(f), OccPath::parse(path), parse_params(params));
}

std::vector<Formula> corpus() {
  std::vector<Formula> out;
  for (const char* n : {"cycle", "diam", "loop", "loop_em", "neg_loop", "shift", "shift_or", "reach", "safe", "nested",
                        "free", "neg_label", "irregular", "serial", "excluded_middle"})
    out.push_back(corpus_formula(n));
  for (const char* t : {"L1: (~@L1 & L2: ~@L2)", "~L1: ~(P(x) & ~@L1)", "~@L1", "L1: ~L2: (~@L1 | @L2)",
                        "L1: (P(x) | L2: (@L1 | @L2))"})
    out.push_back(parse_formula(t));
  for (const auto& f : random_corpus(25)) out.push_back(f);
  return out;
}

bool one_directional(RuleId r) { return r == RuleId::BotElim || r == RuleId::CLFreeElim; }

void check_steps_strongly_equivalent(const Derivation& d) {
  for (std::size_t i = 1; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    if (s.type != StepType::Inference || one_directional(s.rule)) continue;
    const Formula& a = d.steps[i - 1].formula;
    const Formula& b = s.formula;
    Vocabulary v = vocabulary_of(a);
    for (const auto& [p, k] : vocabulary_of(b)) v.emplace(p, k);
    auto fv = free_variables(a);
    for (const auto& x : free_variables(b)) fv.insert(x);
    const std::vector<Variable> vars(fv.begin(), fv.end());
    for (const auto& m : enumerate_structures(v, 2))
      for (const auto& asg : all_assignments(vars, m.domain_size())) {
        INFO(rule_name(s.rule), " ", print_formula(a), " => ", print_formula(b));
        CHECK(verdict_unbounded(m, asg, a) == verdict_unbounded(m, asg, b));
        CHECK(verdict_bounded(m, asg, a) == verdict_bounded(m, asg, b));
      }
  }
}

}  // namespace

TEST_CASE("worked rule applications") {
  CHECK(rewrite(RuleId::SubstCopyElim, "L1: (P(x) & @L1)", "", "claims=0.1") == parse_formula("L1: (P(x) & (P(x) & @L1))"));
  CHECK(rewrite(RuleId::LDualIntro, "L1: ~@L1", "", "fresh=L2") == parse_formula("L2: L1: ~@L2"));
  CHECK(rewrite(RuleId::CLFreeElim, "@L3", "", "subst=P(x)") == parse_formula("P(x)"));
  CHECK(rewrite(RuleId::SubstShift, "L1: (P(x) & @L1)", "", "claims=0.1") ==
        parse_formula("L1: (P(x) & L1: (P(x) & @L1))"));
}

TEST_CASE("parameter syntax round trip") {
  for (const char* t : {"claims=0.1|1.0", "fresh=L3", "label=L2,dir=rev", "subst=(P(x) | Q),subst=bot", "var=y",
                        "claims=|0"}) {
    const RuleParams p = parse_params(t);
    CHECK(parse_params(print_params(p)) == p);
  }
  CHECK(parse_params("claims=|0").claims == std::vector<OccPath>{OccPath{}, OccPath{0}});
  CHECK_THROWS_AS(parse_params("colour=blue"), RuleError);
}

TEST_CASE("checker accepts the shift example and the data file") {
  const CheckResult r = check_text(
      "1 ; premise ; ; ; ; L1:(P(x)&@L1)\n"
      "2 ; SubstShift ; 1 ; ; claims=0.1 ; L1:(P(x)&L1:(P(x)&@L1))\n");
  CHECK(r.ok());
  REQUIRE(r.conclusion);
  CHECK(*r.conclusion == parse_formula("L1: (P(x) & L1: (P(x) & @L1))"));
  CHECK(r.premises == std::vector<Formula>{parse_formula("L1: (P(x) & @L1)")});
}

TEST_CASE("checker rejects the worked side-condition failures") {
  const CheckResult irregular = check_text(
      "1 ; premise ; ; ; ; L1:@L1 & L1:@L1\n2 ; SubstShift ; 1 ; 0 ; claims=0.0 ; L1: L1: @L1 & L1: @L1\n");
  REQUIRE(irregular.error);
  CHECK(irregular.error->step_id == "2");
  CHECK(irregular.error->message.find("top formula not regular") != std::string::npos);
  const CheckResult bot = check_text("1 ; premise ; ; ; ; ~bot\n2 ; BotElim ; 1 ; ; claims=0,subst=P(x) ; ~P(x)\n");
  REQUIRE(bot.error);
  CHECK(bot.error->message.find("replaced bot under negation") != std::string::npos);
}

TEST_CASE("mutation suite") {
  CHECK(test::mutation_suite().size() >= 20);
  for (const auto& m : test::mutation_suite()) {
    INFO(m.name);
    const CheckResult r = check_text(m.derivation);
    REQUIRE(r.error);
    CHECK(r.error->code == m.code);
  }
}

TEST_CASE("derivation parse errors and printing") {
  CHECK_THROWS_AS(parse_derivation("1 ; premise ; ; ; P(x)\n"), InputError);
  CHECK_THROWS_AS(parse_derivation("1 ; Frobnicate ; ; ; ; P(x)\n"), InputError);
  CHECK_THROWS_AS(parse_derivation("1 ; premise ; ; ; ; P(x\n"), InputError);
  const std::string text = "1 ; premise ; ; ; ; L1: (P(x) & @L1)\n2 ; SubstShift ; 1 ; ; claims=0.1 ; L1: (P(x) & L1: (P(x) & @L1))\n";
  const Derivation d = parse_derivation(text);
  CHECK(print_derivation(parse_derivation(print_derivation(d))) == print_derivation(d));
  CHECK(parse_derivation("# only a comment\n\n").steps.empty());
}

TEST_CASE("first-order natural deduction") {
  CHECK(check_text("1 ; premise ; ; ; ; P(x) | Q\n"
                   "2 ; assume ; ; ; ; P(x)\n"
                   "3 ; OrIntro2 ; 2 ; ; subst=Q ; Q | P(x)\n"
                   "4 ; discharge 2 ; 3 ; ; ; Q | P(x)\n"
                   "5 ; assume ; ; ; ; Q\n"
                   "6 ; OrIntro1 ; 5 ; ; subst=P(x) ; Q | P(x)\n"
                   "7 ; discharge 5 ; ; ; ; Q | P(x)\n"
                   "8 ; OrElim ; 1,4,7 ; ; ; Q | P(x)\n")
            .ok());
  CHECK(check_text("1 ; premise ; ; ; ; ~P(x) & ~Q\n"
                   "2 ; assume ; ; ; ; P(x) | Q\n"
                   "3 ; assume ; ; ; ; P(x)\n"
                   "4 ; AndElim1 ; 1 ; ; ; ~P(x)\n"
                   "5 ; BotIntro ; 3,4 ; ; ; bot\n"
                   "6 ; discharge 3 ; ; ; ; bot\n"
                   "7 ; assume ; ; ; ; Q\n"
                   "8 ; AndElim2 ; 1 ; ; ; ~Q\n"
                   "9 ; BotIntro ; 7,8 ; ; ; bot\n"
                   "10 ; discharge 7 ; ; ; ; bot\n"
                   "11 ; OrElim ; 2,6,10 ; ; ; bot\n"
                   "12 ; discharge 2 ; ; ; ; bot\n"
                   "13 ; NegIntroFO ; 12 ; ; ; ~(P(x) | Q)\n")
            .ok());
  CHECK(check_text("1 ; premise ; ; ; ; forall x. P(x)\n"
                   "2 ; ForallElim ; 1 ; ; var=y ; P(y)\n"
                   "3 ; ForallIntro ; 2 ; ; var=y ; forall y. P(y)\n"
                   "4 ; ExistsIntro ; 2 ; ; subst=exists z. P(z),var=y ; exists z. P(z)\n")
            .ok());
  CHECK(check_text("1 ; premise ; ; ; ; exists x. P(x)\n"
                   "2 ; assume ; ; ; ; P(y)\n"
                   "3 ; OrIntro1 ; 2 ; ; subst=Q ; P(y) | Q\n"
                   "4 ; ExistsIntro ; 3 ; ; subst=exists x. (P(x) | Q),var=y ; exists x. (P(x) | Q)\n"
                   "5 ; discharge 2 ; ; ; ; exists x. (P(x) | Q)\n"
                   "6 ; ExistsElim ; 1,5 ; ; var=y ; exists x. (P(x) | Q)\n")
            .ok());
  CHECK(check_text("1 ; premise ; ; ; ; x = y\n"
                   "2 ; premise ; ; ; ; P(x)\n"
                   "3 ; EqElim1 ; 1,2 ; ; ; P(y)\n"
                   "4 ; EqIntro ; ; ; var=z ; z = z\n")
            .ok());
  CHECK(check_text("1 ; assume ; ; ; ; ~P(x)\n"
                   "2 ; premise ; ; ; ; P(x)\n"
                   "3 ; BotIntro ; 2,1 ; ; ; bot\n"
                   "4 ; discharge 1 ; ; ; ; bot\n"
                   "5 ; NegElimFO ; 4 ; ; ; P(x)\n")
            .ok());
}

TEST_CASE("reverse rules are checked through the forward rule") {
  CHECK(check_text("1 ; premise ; ; ; ; L1: (P(x) & L1: (P(x) & @L1))\n"
                   "2 ; SubstShiftRev ; 1 ; ; claims=0.1 ; L1: (P(x) & @L1)\n")
            .ok());
  CHECK(check_text("1 ; premise ; ; ; ; ~P(x) | ~Q\n2 ; DualNotAnd ; 1 ; ; dir=rev ; ~(P(x) & Q)\n").ok());
  const CheckResult bad = check_text("1 ; premise ; ; ; ; ~P(x) | ~Q\n2 ; DualNotAnd ; 1 ; ; dir=rev ; ~(Q & P(x))\n");
  REQUIRE(bad.error);
}

TEST_CASE("nnf derivations") {
  const auto [fwd, back] = build_nnf_derivation(parse_formula("~(P(x) & Q(x))"));
  CHECK(fwd.steps.size() == 2);
  CHECK(back.steps.size() == 2);
  CHECK(check_derivation(fwd).ok());
  CHECK(check_derivation(back).ok());
  const auto [f0, b0] = build_nnf_derivation(parse_formula("L1: (P(x) | @L1)"));
  CHECK(f0.steps.size() == 1);
  CHECK(b0.steps.size() == 1);
  for (const auto& f : corpus()) {
    INFO(print_formula(f));
    const auto [a, b] = build_nnf_derivation(f);
    const Formula star = to_strong_nnf(f).result;
    const CheckResult ra = check_derivation(a), rb = check_derivation(b);
    REQUIRE(ra.ok());
    REQUIRE(rb.ok());
    CHECK(ra.premises == std::vector<Formula>{f});
    CHECK(*ra.conclusion == star);
    CHECK(rb.premises == std::vector<Formula>{star});
    CHECK(*rb.conclusion == f);
    check_steps_strongly_equivalent(a);
    check_steps_strongly_equivalent(b);
  }
}

TEST_CASE("approximant derivation of the worked example") {
  const Derivation d = build_approximant_derivation(parse_formula("L1: (P(x) | @L1)"), 0);
  REQUIRE(d.steps.size() == 3);
  CHECK(d.steps[0].formula == parse_formula("P(x) | bot"));
  CHECK(d.steps[1].rule == RuleId::LDummyIntroElim);
  CHECK(d.steps[2].rule == RuleId::BotElim);
  CHECK(check_derivation(d).ok());
  CHECK_THROWS_AS(build_approximant_derivation(parse_formula("~L1: @L1"), 0), InputError);
}

TEST_CASE("approximant derivations over the corpus") {
  for (const auto& g : corpus()) {
    const Formula f = to_strong_nnf(g).result;
    for (unsigned n = 0; n <= 2; ++n) {
      INFO(print_formula(f), " n=", n);
      const Derivation d = build_approximant_derivation(f, n);
      const CheckResult r = check_derivation(d);
      const std::string err = r.error ? r.error->step_id + " " + r.error->code + " " + r.error->message : "";
      INFO(err);
      REQUIRE(r.ok());
      CHECK(r.premises == std::vector<Formula>{approximant(f, n)});
      CHECK(*r.conclusion == f);
      check_steps_strongly_equivalent(d);
    }
  }
}
