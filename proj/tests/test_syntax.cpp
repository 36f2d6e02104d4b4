#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "loopfo/corpus.hpp"
#include "loopfo/error.hpp"
#include "loopfo/syntax.hpp"
#include "support.hpp"

using namespace loopfo;

namespace {
Formula P(const char* v) { return Formula::atom("P", {v}); }
}  // namespace

TEST_CASE("parse: label over conjunction with claim") {
  const Formula f = parse_formula("L1: (P(x) & @L1)");
  CHECK(f == Formula::labeled(1, Formula::conjunction(P("x"), Formula::claim(1))));
}

TEST_CASE("parse: quantifier extends over the disjunction") {
  const Formula f = parse_formula("exists x. x = y | bot");
  CHECK(f == Formula::exists("x", Formula::disjunction(Formula::equal("x", "y"), Formula::falsum())));
}

TEST_CASE("parse: negation and labels bind tightly") {
  CHECK(parse_formula("~P(x) & Q(x)") ==
        Formula::conjunction(Formula::negation(P("x")), Formula::atom("Q", {"x"})));
  CHECK(parse_formula("L1: @L1 & L1: @L1") ==
        Formula::conjunction(Formula::labeled(1, Formula::claim(1)), Formula::labeled(1, Formula::claim(1))));
}

TEST_CASE("parse: sugar for top, implication and equivalence") {
  CHECK(parse_formula("top") == Formula::top());
  CHECK(parse_formula("P(x) -> Q") == Formula::disjunction(Formula::negation(P("x")), Formula::atom("Q", {})));
  const Formula iff = parse_formula("Q <-> Q");
  CHECK(free_variables(iff).empty());
  CHECK(is_pure_fo(iff));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_formula("@L1(x)"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("P(x"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("P(x) & P(x,y)"), Error);
  CHECK_THROWS_AS(parse_formula("R(x)", Vocabulary{{"P", 1}}), Error);
  CHECK_THROWS_AS(parse_formula("P(x,y)", Vocabulary{{"P", 1}}), Error);
}

TEST_CASE("print") {
  CHECK(print_formula(Formula::claim(7)) == "@L7");
  CHECK(print_formula(Formula::labeled(1, Formula::claim(1))) == "L1: @L1");
  CHECK(print_formula(Formula::negation(Formula::falsum())) == "~bot");
  CHECK(print_formula(parse_formula("L1: (P(x) | @L1)")) == "L1: (P(x) | @L1)");
}

TEST_CASE("round trip on random and corpus formulas") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Formula f = random_formula(rng, 1 + i % 20);
    INFO(print_formula(f));
    CHECK(parse_formula(print_formula(f)) == f);
  }
  for (const auto& e : named_corpus()) {
    const Formula f = parse_formula(e.text);
    CHECK(parse_formula(print_formula(f)) == f);
  }
}

TEST_CASE("free variables") {
  CHECK(free_variables(parse_formula("@L1")).empty());
  CHECK(free_variables(parse_formula("L1: P(x)")) == std::set<Variable>{"x"});
  CHECK(free_variables(parse_formula("exists x. E(x,y)")) == std::set<Variable>{"y"});
}

TEST_CASE("resolve_reference") {
  const Formula f = parse_formula("L1: L1: @L1");
  CHECK(resolve_reference(f, OccPath{0, 0}) == OccPath{0});
  CHECK(!resolve_reference(parse_formula("@L1 | P(x)"), OccPath{0}));
  CHECK(resolve_reference(parse_formula("L1: (P(x) | @L1)"), OccPath{0, 1}) == OccPath{});
}

TEST_CASE("resolve_reference returns the nearest same-label ancestor") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Formula f = random_formula(rng, 14);
    for (const auto& p : all_paths(f)) {
      if (!subformula(f, p).is(Kind::Claim)) continue;
      const LabelId id = subformula(f, p).label();
      std::optional<OccPath> expect;
      OccPath q;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const Formula& g = subformula(f, q);
        if (g.is(Kind::Label) && g.label() == id) expect = q;
        q = q.child(p.steps[k]);
      }
      CHECK(resolve_reference(f, p) == expect);
    }
  }
}

TEST_CASE("occurrence polarity") {
  CHECK(occurrence_polarity(parse_formula("~(P(x) | @L1)"), OccPath{0, 1}) == Polarity::Negative);
  CHECK(occurrence_polarity(parse_formula("~~@L1"), OccPath{0, 0}) == Polarity::Positive);
  CHECK(occurrence_polarity(parse_formula("forall x. @L1"), OccPath{0}) == Polarity::Positive);
}

TEST_CASE("polarity is preserved under double negation wrapping") {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Formula f = random_formula(rng, 12);
    const Formula g = Formula::negation(Formula::negation(f));
    for (const auto& p : all_paths(f))
      CHECK(occurrence_polarity(f, p) == occurrence_polarity(g, OccPath{0, 0}.concat(p)));
  }
}

TEST_CASE("regularity") {
  CHECK(!is_regular(parse_formula("L1: @L1 & L1: @L1")));
  CHECK(!is_regular(parse_formula("@L1 & L1: P(x)")));
  CHECK(is_regular(parse_formula("L1: @L1 & L2: @L2")));
}

TEST_CASE("regularize") {
  CHECK(regularize(parse_formula("L1: @L1 & L1: @L1")) == parse_formula("L2: @L2 & L3: @L3"));
  CHECK(regularize(parse_formula("@L1 & L1: @L1")) == parse_formula("@L1 & L2: @L2"));
  const Formula r = parse_formula("L1: @L1 & L2: (P(x) | @L2)");
  CHECK(regularize(r) == r);
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Formula f = random_formula(rng, 14);
    const Formula g = regularize(f);
    CHECK(is_regular(g));
    CHECK(regularize(g) == g);
  }
}

TEST_CASE("rename_label") {
  CHECK(rename_label(parse_formula("L1: (P(x) | @L1)"), OccPath{}, 5) == parse_formula("L5: (P(x) | @L5)"));
  CHECK(rename_violation(parse_formula("L1: (@L2 | @L1)"), OccPath{}, 2) == 1);
  CHECK(rename_violation(parse_formula("L1: L2: (@L1 | @L2)"), OccPath{}, 2) == 2);
  CHECK_THROWS(rename_label(parse_formula("L1: (@L2 | @L1)"), OccPath{}, 2));
  CHECK_THROWS(rename_label(parse_formula("L1: L2: (@L1 | @L2)"), OccPath{}, 2));
}

TEST_CASE("label helpers") {
  const Formula f = parse_formula("L1: (@L1 | L2: (@L1 | @L2)) & L3: P(x)");
  CHECK(label_ids(f) == std::set<LabelId>{1, 2, 3});
  CHECK(fresh_label(f) == 4);
  CHECK(label_nesting_depth(f) == 2);
  CHECK(strict_scope_claims(f, OccPath{0}).size() == 2);
  CHECK(is_dummy_label(f, OccPath{1}));
  CHECK(!is_dummy_label(f, OccPath{0}));
  CHECK(free_claims(parse_formula("@L1 | L2: @L2")) == std::vector<OccPath>{OccPath{0}});
}

TEST_CASE("substitute_variable") {
  CHECK(substitute_variable(parse_formula("P(x) & exists x. P(x)"), "x", "y") ==
        parse_formula("P(y) & exists x. P(x)"));
  CHECK(!substitute_variable(parse_formula("exists y. E(x,y)"), "x", "y"));
}
