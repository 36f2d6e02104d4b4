#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "loopfo/corpus.hpp"
#include "loopfo/error.hpp"
#include "loopfo/game.hpp"
#include "loopfo/structure.hpp"
#include "loopfo/syntax.hpp"
#include "support.hpp"

using namespace loopfo;

namespace {
const char* kC3 = "domain 3\nrel E 2 { (0,1)(1,2)(2,0) }\n";
}

TEST_CASE("parse_structure: the directed 3-cycle") {
  const Structure m = parse_structure(kC3);
  CHECK(m.domain_size() == 3);
  CHECK(m.tuples("E") == std::vector<Tuple>{{0, 1}, {1, 2}, {2, 0}});
  CHECK(!m.holds("E", {1, 0}));
  CHECK(parse_structure(print_structure(m)) == m);
}

TEST_CASE("parse_structure errors") {
  CHECK_THROWS_AS(parse_structure("domain 0\n"), InputError);
  CHECK_THROWS_AS(parse_structure("domain 3\nrel E 2 { (3,0) }\n"), InputError);
  CHECK_THROWS_AS(parse_structure("domain 3\nrel E 2 { (1) }\n"), InputError);
  CHECK_THROWS_AS(parse_structure("rel E 2 { }\n"), InputError);
}

TEST_CASE("assignments") {
  const Assignment s = parse_assignment("x=0,y=2");
  CHECK(s == Assignment{{"x", 0}, {"y", 2}});
  CHECK(parse_assignment(print_assignment(s)) == s);
  CHECK(parse_assignment("").empty());
  const Structure m = parse_structure(kC3);
  CHECK_THROWS_AS(check_suitable(m, {{"x", 3}}, parse_formula("exists y. E(x,y)")), InputError);
  CHECK_THROWS_AS(check_suitable(m, {}, parse_formula("exists y. E(x,y)")), InputError);
  CHECK_THROWS_AS(check_suitable(m, {}, parse_formula("P(x)")), InputError);
  CHECK_NOTHROW(check_suitable(m, {{"x", 2}}, parse_formula("exists y. E(x,y)")));
}

TEST_CASE("tarski_eval on the 3-cycle") {
  const Structure m = parse_structure(kC3);
  CHECK(!tarski_eval(m, {}, parse_formula("exists x. E(x,x)")));
  // Brute force over all 3x3 cases by hand.
  bool all = true;
  for (Element x = 0; x < 3; ++x) {
    bool some = false;
    for (Element y = 0; y < 3; ++y) some = some || m.holds("E", {x, y});
    all = all && some;
  }
  CHECK(all);
  CHECK(tarski_eval(m, {}, parse_formula("forall x. exists y. E(x,y)")));
  CHECK(!tarski_eval(m, {}, parse_formula("bot")));
  CHECK(tarski_eval(m, {}, parse_formula("top")));
  CHECK(tarski_eval(m, {{"x", 0}, {"y", 0}}, parse_formula("x = y")));
  CHECK_THROWS(tarski_eval(m, {}, parse_formula("L1: @L1")));
}

TEST_CASE("FoEvaluator agrees with tarski_eval") {
  std::mt19937 rng(17);
  int checked = 0;
  while (checked < 60) {
    const Formula f = random_formula(rng, 10);
    if (!is_pure_fo(f)) continue;
    ++checked;
    const FoEvaluator ev(f);
    test::for_each_case(f, 2, [&](const Structure& m, const Assignment& s) {
      CHECK(ev.eval(m, s) == tarski_eval(m, s, f));
    });
  }
}

TEST_CASE("enumerate_structures counts") {
  CHECK(enumerate_structures({{"P", 1}}, 1).size() == 2);
  CHECK(enumerate_structures({{"E", 2}}, 1).size() == 2);
  CHECK(enumerate_structures({{"E", 2}}, 2).size() == 18);
  CHECK(enumerate_structures({}, 3).size() == 3);
}

TEST_CASE("enumerate_structures matches the closed form and is duplicate-free") {
  const std::vector<Vocabulary> vocabs = {{{"P", 1}}, {{"E", 2}}, {{"P", 1}, {"Q", 0}}, {{"P", 1}, {"E", 2}}};
  for (const auto& v : vocabs)
    for (std::size_t n = 1; n <= 3; ++n) {
      std::uint64_t expect = 0;
      for (std::size_t k = 1; k <= n; ++k) {
        std::uint64_t bits = 0;
        for (const auto& [p, a] : v) bits += static_cast<std::uint64_t>(std::pow(k, a));
        expect += std::uint64_t{1} << bits;
      }
      CHECK(structure_count(v, n) == expect);
      if (expect > 5000) continue;
      const auto all = enumerate_structures(v, n);
      CHECK(all.size() == expect);
      for (std::size_t i = 1; i < all.size(); ++i) CHECK(!(all[i] == all[i - 1]));
    }
  CHECK(structure_count({{"R", 3}}, 5) == UINT64_MAX);
}

TEST_CASE("all_assignments") {
  const auto as = all_assignments({"x", "y"}, 3);
  CHECK(as.size() == 9);
  CHECK(as.front() == Assignment{{"x", 0}, {"y", 0}});
  CHECK(as.back() == Assignment{{"x", 2}, {"y", 2}});
  CHECK(all_assignments({}, 2).size() == 1);
}

TEST_CASE("conservativity: label-free formulas agree with tarski_eval") {
  std::mt19937 rng(23);
  int checked = 0;
  while (checked < 80) {
    const Formula f = random_formula(rng, 10);
    if (!is_pure_fo(f)) continue;
    ++checked;
    test::for_each_case(f, 2, [&](const Structure& m, const Assignment& s) {
      const Verdict want = tarski_eval(m, s, f) ? Verdict::EloiseWins : Verdict::AbelardWins;
      CHECK(verdict_unbounded(m, s, f) == want);
      CHECK(verdict_bounded(m, s, f) == want);
    });
  }
}
