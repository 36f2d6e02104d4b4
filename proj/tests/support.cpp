#include "support.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <unordered_map>

#include "loopfo/corpus.hpp"

#ifndef LOOPFO_TEST_DATA
#define LOOPFO_TEST_DATA "tests/data"
#endif

namespace loopfo::test {

namespace {

enum class Val : std::uint8_t { E, A, D };

struct Frame;
using Frames = std::shared_ptr<const Frame>;

// Enclosing label occurrences, innermost first.
struct Frame {
  LabelId id;
  const Formula* label;
  std::string path;
  Frames outer;
};

class Oracle {
 public:
  Oracle(const Structure& m) : m_(m) {}

  Val eval(const Formula& f, const std::string& path, const Frames& frames, bool plus, int clock, Assignment& env) {
    std::string key = path;
    key += plus ? '+' : '-';
    key += std::to_string(clock);
    for (const auto& [v, e] : env) key += "|" + v + "=" + std::to_string(e);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Val v = compute(f, path, frames, plus, clock, env);
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  static Val truth(bool t, bool plus) { return t == plus ? Val::E : Val::A; }

  Val compute(const Formula& f, const std::string& path, const Frames& frames, bool plus, int clock,
              Assignment& env) {
    switch (f.kind()) {
      case Kind::Falsum:
        return truth(false, plus);
      case Kind::Atom: {
        Tuple t;
        for (const auto& a : f.args()) t.push_back(env.at(a));
        return truth(m_.holds(f.predicate(), t), plus);
      }
      case Kind::Equal:
        return truth(env.at(f.args()[0]) == env.at(f.args()[1]), plus);
      case Kind::Claim: {
        const Frame* fr = frames.get();
        while (fr && fr->id != f.label()) fr = fr->outer.get();
        if (!fr || clock == 0) return Val::D;
        return eval(*fr->label, fr->path, fr->outer, plus, clock - 1, env);
      }
      case Kind::Not:
        return eval(f.child(), path + ".0", frames, !plus, clock, env);
      case Kind::Label: {
        auto inner = std::make_shared<const Frame>(Frame{f.label(), &f, path, frames});
        return eval(f.child(), path + ".0", inner, plus, clock, env);
      }
      case Kind::And:
      case Kind::Or: {
        std::vector<Val> vs;
        for (std::size_t i = 0; i < 2; ++i) vs.push_back(eval(f.child(i), path + "." + std::to_string(i), frames, plus, clock, env));
        return combine(vs, f.is(Kind::Or) == plus);
      }
      case Kind::Exists:
      case Kind::Forall: {
        const Variable& x = f.var();
        const auto saved = env.find(x) == env.end() ? std::optional<Element>() : std::optional<Element>(env[x]);
        std::vector<Val> vs;
        for (Element e = 0; e < m_.domain_size(); ++e) {
          env[x] = e;
          vs.push_back(eval(f.child(), path + ".0", frames, plus, clock, env));
        }
        if (saved)
          env[x] = *saved;
        else
          env.erase(x);
        return combine(vs, f.is(Kind::Exists) == plus);
      }
    }
    return Val::D;
  }

  static Val combine(const std::vector<Val>& vs, bool eloise_moves) {
    auto any = [&](Val v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); };
    auto all = [&](Val v) { return std::all_of(vs.begin(), vs.end(), [v](Val w) { return w == v; }); };
    if (eloise_moves) return any(Val::E) ? Val::E : all(Val::A) ? Val::A : Val::D;
    return any(Val::A) ? Val::A : all(Val::E) ? Val::E : Val::D;
  }

  const Structure& m_;
  std::unordered_map<std::string, Val> memo_;
};

}  // namespace

Verdict oracle_clocked(const Structure& m, const Assignment& s, const Formula& f, unsigned n) {
  Oracle o(m);
  Assignment env = s;
  switch (o.eval(f, "", nullptr, true, static_cast<int>(n), env)) {
    case Val::E: return Verdict::EloiseWins;
    case Val::A: return Verdict::AbelardWins;
    case Val::D: return Verdict::Undetermined;
  }
  return Verdict::Undetermined;
}

bool has_cycle(const Structure& m, const std::string& rel) {
  const std::size_t n = m.domain_size();
  std::vector<int> color(n, 0);
  std::function<bool(Element)> dfs = [&](Element u) {
    color[u] = 1;
    for (Element v = 0; v < n; ++v) {
      if (!m.holds(rel, {u, v})) continue;
      if (color[v] == 1) return true;
      if (color[v] == 0 && dfs(v)) return true;
    }
    color[u] = 2;
    return false;
  };
  for (Element u = 0; u < n; ++u)
    if (color[u] == 0 && dfs(u)) return true;
  return false;
}

std::vector<std::pair<std::string, Formula>> grid_corpus(std::size_t random) {
  std::vector<std::pair<std::string, Formula>> out;
  for (const auto& e : named_corpus()) out.emplace_back(e.name, parse_formula(e.text));
  const auto rs = random_corpus(random);
  for (std::size_t i = 0; i < rs.size(); ++i) out.emplace_back("random_" + std::to_string(i), rs[i]);
  return out;
}

Structure linear_order(const std::vector<Element>& order) {
  Structure m(order.size(), {{"Lt", 2}});
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) m.set("Lt", {order[i], order[j]});
  return m;
}

std::vector<std::vector<Element>> permutations(std::size_t n) {
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Element>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string data_path(const std::string& name) { return std::string(LOOPFO_TEST_DATA) + "/" + name; }

}  // namespace loopfo::test

namespace loopfo::test {

const std::vector<Mutation>& mutation_suite() {
  static const std::vector<Mutation> suite = {
      {"shift on irregular formula",
       "1 ; premise ; ; ; ; L1: @L1 & L1: @L1\n2 ; SubstShift ; 1 ; 0 ; claims=0.0 ; L1: L1: @L1 & L1: @L1\n",
       "NotRegular"},
      {"bot under negation", "1 ; premise ; ; ; ; ~bot\n2 ; BotElim ; 1 ; ; claims=0,subst=P(x) ; ~P(x)\n",
       "BotUnderNegation"},
      {"rename captures free claim",
       "1 ; premise ; ; ; ; L1: (@L2 | @L1)\n2 ; LCRename ; 1 ; ; label=L2 ; L2: (@L2 | @L2)\n", "RenameUnsafe1"},
      {"rename into inner scope",
       "1 ; premise ; ; ; ; L1: L2: (@L1 | @L2)\n2 ; LCRename ; 1 ; ; label=L2 ; L2: L2: (@L2 | @L2)\n",
       "RenameUnsafe2"},
      {"non-fresh label", "1 ; premise ; ; ; ; L1: ~@L1\n2 ; LDualIntro ; 1 ; ; fresh=L1 ; L1: L1: ~@L1\n",
       "NotFresh"},
      {"missing fresh label", "1 ; premise ; ; ; ; L1: ~@L1\n2 ; LDualIntro ; 1 ; ; ; L2: L1: ~@L2\n",
       "MissingParameter"},
      {"extra claim outside scope",
       "1 ; premise ; ; ; ; L1: (P(x) & @L1) & L2: @L2\n"
       "2 ; SubstShift ; 1 ; 0 ; claims=0.1|1.0 ; L1: (P(x) & L1: (P(x) & @L1)) & L2: L1: (P(x) & @L1)\n",
       "NotInStrictScope"},
      {"claim of another label",
       "1 ; premise ; ; ; ; L1: L2: (@L1 | @L2)\n2 ; SubstShift ; 1 ; ; claims=0.0.1 ; L1: L2: (@L1 | L1: L2: (@L1 | @L2))\n",
       "NotInStrictScope"},
      {"shift at a non-label", "1 ; premise ; ; ; ; L1: (P(x) & @L1)\n2 ; SubstShift ; 1 ; 0 ; claims=0.1 ; P(x)\n",
       "NotARedex"},
      {"wrong conclusion", "1 ; premise ; ; ; ; L1: (P(x) & @L1)\n2 ; SubstShift ; 1 ; ; claims=0.1 ; L1: (P(x) & @L1)\n",
       "ConclusionMismatch"},
      {"duplicate id", "1 ; premise ; ; ; ; P(x)\n1 ; premise ; ; ; ; Q\n", "DuplicateId"},
      {"dangling input", "1 ; premise ; ; ; ; P(x)\n2 ; AndIntro ; 1,7 ; ; ; P(x) & Q\n", "BadReference"},
      {"undischarged assumption", "1 ; premise ; ; ; ; P(x)\n2 ; assume ; ; ; ; Q\n", "UnclosedSubproof"},
      {"discharge past an open assumption",
       "1 ; assume ; ; ; ; P(x)\n2 ; assume ; ; ; ; Q\n3 ; discharge 1 ; ; ; ; Q\n", "Scope"},
      {"eigenvariable free in premise", "1 ; premise ; ; ; ; P(x)\n2 ; ForallIntro ; 1 ; ; var=x ; forall x. P(x)\n",
       "Eigenvariable"},
      {"first-order rule on a label formula",
       "1 ; premise ; ; ; ; forall x. L1: (P(x) | @L1)\n2 ; ForallElim ; 1 ; ; var=y ; L1: (P(y) | @L1)\n", "NotFO"},
      {"free-elim on a bound claim",
       "1 ; premise ; ; ; ; L1: (P(x) | @L1)\n2 ; CLFreeElim ; 1 ; 0.1 ; subst=Q ; L1: (P(x) | Q)\n", "NotFree"},
      {"bot-elim outside strong NNF",
       "1 ; premise ; ; ; ; ~(bot & P(x))\n2 ; BotElim ; 1 ; ; claims=0.0,subst=Q ; ~(Q & P(x))\n", "NotStrongNnf"},
      {"introduced label is not a dummy",
       "1 ; premise ; ; ; ; P(x) | @L1\n2 ; LDummyIntroElim ; 1 ; ; label=L1 ; L1: (P(x) | @L1)\n", "NotDummy"},
      {"invalid occurrence path", "1 ; premise ; ; ; ; P(x)\n2 ; DualNotNot ; 1 ; 3 ; ; P(x)\n", "BadPath"},
      {"wrong input count", "1 ; premise ; ; ; ; P(x)\n2 ; AndIntro ; 1 ; ; ; P(x) & P(x)\n", "BadInputs"},
  };
  return suite;
}

}  // namespace loopfo::test
