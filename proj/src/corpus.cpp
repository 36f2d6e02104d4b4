#include "loopfo/corpus.hpp"

#include "loopfo/error.hpp"
#include "loopfo/syntax.hpp"

namespace loopfo {

namespace {

std::string min_of(const std::string& x) { return "(forall v. ~Lt(v," + x + "))"; }
std::string max_of(const std::string& x) { return "(forall v. ~Lt(" + x + ",v))"; }
std::string succ(const std::string& a, const std::string& b) {
  return "(Lt(" + a + "," + b + ") & forall v. ~(Lt(" + a + ",v) & Lt(v," + b + ")))";
}

std::string equivalence(const std::string& e) {
  return "(forall x. " + e + "(x,x)) & (forall x. forall y. (~" + e + "(x,y) | " + e + "(y,x))) & " +
         "(forall x. forall y. forall z. (~(" + e + "(x,y) & " + e + "(y,z)) | " + e + "(x,z)))";
}

std::vector<CorpusEntry> build() {
  const std::string order = linear_order_axioms();
  std::vector<CorpusEntry> c;
  c.push_back({"cycle", "exists x. exists y. (x = y & L1: (E(y,x) | exists z. (E(y,z) & exists y. (y = z & @L1))))"});
  c.push_back({"diam", "forall x. forall y. (x = y | L1: (E(x,y) | exists z. (E(x,z) & exists x. (x = z & @L1))))"});
  c.push_back({"wf", "forall x. L1: forall y. (~Lt(y,x) | forall x. (~x = y | @L1))"});
  c.push_back({"loop", "L1: @L1"});
  c.push_back({"loop_em", "L1: @L1 | ~L1: @L1"});
  c.push_back({"neg_loop", "L1: ~@L1"});
  c.push_back({"psi", order + " & exists u. exists t. (" + min_of("u") + " & " + max_of("t") +
                          " & (u = t | exists x. (" + succ("u", "x") + " & L1: (x = t | exists y. (" + succ("x", "y") +
                          " & exists x. (x = y & @L1))))))"});
  c.push_back({"chi1", equivalence("E1") +
                           " & (forall x. exists y. (~x = y & E1(x,y) & forall z. (~E1(x,z) | x = z | y = z)))"});
  c.push_back({"chi2", equivalence("E2") + " & (exists x. ((forall y. (x = y | ~E2(x,y))) & " +
                           "forall y. (y = x | exists z. (~y = z & E2(y,z) & forall w. (~E2(y,w) | y = w | z = w)))))"});
  c.push_back({"even", order + " & exists x. exists y. (" + min_of("x") + " & " + max_of("y") + " & (" +
                           succ("x", "y") + " | L1: exists z. exists w. (" + succ("x", "z") + " & " + succ("w", "y") +
                           " & (" + succ("z", "w") + " | exists x. exists y. (x = z & y = w & @L1)))))"});
  c.push_back({"shift", "L1: (P(x) & @L1)"});
  c.push_back({"shift_or", "L1: (P(x) | @L1)"});
  c.push_back({"reach", "exists x. L1: (P(x) | exists y. (E(x,y) & exists x. (x = y & @L1)))"});
  c.push_back({"safe", "forall x. L1: (P(x) & forall y. (~E(x,y) | exists x. (x = y & @L1)))"});
  c.push_back({"nested", "L1: ~(P(x) & L2: (~@L1 | @L2))"});
  c.push_back({"free", "@L1 | P(x)"});
  c.push_back({"neg_label", "~L1: (P(x) | @L1)"});
  c.push_back({"irregular", "L1: @L1 & L1: @L1"});
  c.push_back({"serial", "forall x. exists y. E(x,y)"});
  c.push_back({"excluded_middle", "P(x) | ~P(x)"});
  return c;
}

const char* kVars[] = {"x", "y"};

Formula gen(std::mt19937& rng, std::size_t budget, std::vector<LabelId>& labels) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto var = [&]() { return Variable(kVars[pick(2)]); };
  if (budget <= 1) {
    switch (pick(7)) {
      case 0:
        return Formula::atom("P", {var()});
      case 1:
        return Formula::atom("E", {var(), var()});
      case 2:
        return Formula::atom("Q", {});
      case 3:
        return Formula::equal(var(), var());
      case 4:
        return Formula::falsum();
      default: {
        if (!labels.empty() && pick(5) != 0) return Formula::claim(labels[pick(labels.size())]);
        return Formula::claim(static_cast<LabelId>(1 + pick(2)));
      }
    }
  }
  const std::size_t kind = budget == 2 ? pick(4) : pick(6);
  switch (kind) {
    case 0:
      return Formula::negation(gen(rng, budget - 1, labels));
    case 1:
      return Formula::quantifier(pick(2) ? Kind::Exists : Kind::Forall, var(), gen(rng, budget - 1, labels));
    case 2:
    case 3: {
      LabelId id = static_cast<LabelId>(1 + pick(2));
      labels.push_back(id);
      Formula body = gen(rng, budget - 1, labels);
      labels.pop_back();
      return Formula::labeled(id, body);
    }
    default: {
      std::size_t left = 1 + pick(budget - 2);
      Formula a = gen(rng, left, labels);
      Formula b = gen(rng, budget - 1 - left, labels);
      return Formula::binary(pick(2) ? Kind::And : Kind::Or, a, b);
    }
  }
}

}  // namespace

const std::vector<CorpusEntry>& named_corpus() {
  static const std::vector<CorpusEntry> corpus = build();
  return corpus;
}

Formula corpus_formula(const std::string& name) {
  for (const auto& e : named_corpus())
    if (e.name == name) return parse_formula(e.text);
  throw InputError("no corpus formula named '" + name + "'");
}

std::string linear_order_axioms() {
  return "(forall x. ~Lt(x,x)) & (forall x. forall y. forall z. (~(Lt(x,y) & Lt(y,z)) | Lt(x,z))) & "
         "(forall x. forall y. (x = y | Lt(x,y) | Lt(y,x))) & (exists x. exists y. ~x = y)";
}

Formula random_formula(std::mt19937& rng, std::size_t max_nodes) {
  std::vector<LabelId> labels;
  std::size_t budget = std::uniform_int_distribution<std::size_t>(3, std::max<std::size_t>(3, max_nodes))(rng);
  return gen(rng, budget, labels);
}

std::vector<Formula> random_corpus(std::size_t count, std::uint32_t seed, std::size_t max_nodes) {
  std::mt19937 rng(seed);
  std::vector<Formula> out;
  while (out.size() < count) {
    Formula f = random_formula(rng, max_nodes);
    bool has_claim = false;
    for (const auto& p : all_paths(f)) has_claim = has_claim || subformula(f, p).is(Kind::Claim);
    // Keep the sample focused on the recursive fragment.
    if (!has_claim && out.size() % 5 != 0) continue;
    bool dup = false;
    for (const auto& g : out) dup = dup || g == f;
    if (!dup) out.push_back(f);
  }
  return out;
}

}  // namespace loopfo
