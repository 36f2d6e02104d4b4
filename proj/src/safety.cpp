#include "loopfo/safety.hpp"

#include <map>

#include "loopfo/error.hpp"
#include "loopfo/syntax.hpp"

namespace loopfo {

namespace {

std::string unique_prefix(const Vocabulary& v) {
  std::string prefix = "N";
  auto clashes = [&](const std::string& p) {
    for (const auto& [name, a] : v)
      if (name.rfind(p + "_", 0) == 0) return true;
    return false;
  };
  while (clashes(prefix)) prefix += "N";
  return prefix;
}

Formula close_forall(const std::vector<Variable>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::forall(*it, body);
  return body;
}

Formula close_exists(const std::vector<Variable>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::exists(*it, body);
  return body;
}

Formula implies(const Formula& a, const Formula& b) { return Formula::disjunction(Formula::negation(a), b); }

}  // namespace

Formula SafetyTheory::conjunction() const {
  Formula out = root;
  for (auto it = axioms.rbegin(); it != axioms.rend(); ++it) out = Formula::conjunction(it->formula, out);
  return out;
}

SafetyTheory safety_theory(const Formula& f) {
  SafetyTheory t;
  t.base = vocabulary_of(f);
  t.extended = t.base;
  t.variables = all_variables(f);
  t.occurrences = all_paths(f);
  const std::string prefix = unique_prefix(t.base);
  const unsigned k = static_cast<unsigned>(t.variables.size());
  std::map<OccPath, std::size_t> index;
  for (std::size_t i = 0; i < t.occurrences.size(); ++i) {
    index[t.occurrences[i]] = i;
    for (const char* s : {"p", "m"}) {
      std::string name = prefix + "_" + std::to_string(i) + "_" + s;
      t.predicates.push_back(name);
      t.extended[name] = k;
    }
  }
  auto N = [&](std::size_t occ, Sign s) { return Formula::atom(t.predicate(occ, s), t.variables); };

  for (std::size_t i = 0; i < t.occurrences.size(); ++i) {
    const OccPath& p = t.occurrences[i];
    const Formula& g = subformula(f, p);
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const bool plus = s == Sign::Plus;
      std::optional<Formula> rhs;
      switch (g.kind()) {
        case Kind::Falsum:
        case Kind::Atom:
        case Kind::Equal:
          rhs = plus ? Formula::negation(g) : g;
          break;
        case Kind::Claim:
          if (auto ref = resolve_reference(f, p)) rhs = N(index.at(*ref), s);
          break;
        case Kind::Not:
          rhs = N(index.at(p.child(0)), flip(s));
          break;
        case Kind::Label:
          rhs = N(index.at(p.child(0)), s);
          break;
        case Kind::Exists:
        case Kind::Forall: {
          // Eloise moves at (exists, +) and (forall, -): every choice must stay safe.
          const bool eloise = g.is(Kind::Exists) == plus;
          Formula body = N(index.at(p.child(0)), s);
          rhs = eloise ? Formula::forall(g.var(), body) : Formula::exists(g.var(), body);
          break;
        }
        case Kind::And:
        case Kind::Or: {
          const bool eloise = g.is(Kind::Or) == plus;
          Formula a = N(index.at(p.child(0)), s);
          Formula b = N(index.at(p.child(1)), s);
          rhs = eloise ? Formula::conjunction(a, b) : Formula::disjunction(a, b);
          break;
        }
      }
      if (!rhs) continue;
      t.axioms.push_back(SafetyAxiom{"safe_" + std::to_string(i) + (plus ? "_p" : "_m"),
                                     close_forall(t.variables, implies(N(i, s), *rhs)), p, s});
    }
  }
  const auto fv = free_variables(f);
  std::vector<Variable> hidden;
  for (const auto& v : t.variables)
    if (!fv.count(v)) hidden.push_back(v);
  t.root = close_exists(hidden, N(0, Sign::Plus));

  std::string so = "forall";
  for (std::size_t i = 0; i < t.predicates.size(); ++i) so += (i ? ", " : " ") + t.predicates[i];
  t.second_order = (t.predicates.empty() ? std::string() : so + ". ") + "~(" + print_formula(t.conjunction()) + ")";
  return t;
}

std::size_t safety_bits(const SafetyTheory& t, std::size_t domain_size) {
  std::size_t per = 1;
  for (std::size_t i = 0; i < t.variables.size(); ++i) per *= domain_size;
  return per * t.predicates.size();
}

bool verify_safety_small(const Formula& f, const Structure& m, const Assignment& s) {
  check_suitable(m, s, f);
  const SafetyTheory t = safety_theory(f);
  const std::size_t bits = safety_bits(t, m.domain_size());
  if (bits > kSafetyBitCap)
    throw BudgetError("safety expansion search needs " + std::to_string(bits) + " bits, cap is " +
                      std::to_string(kSafetyBitCap));
  Vocabulary extra;
  for (const auto& p : t.predicates) extra[p] = static_cast<unsigned>(t.variables.size());
  Structure x = m.expand(extra);
  const FoEvaluator eval(t.conjunction());
  std::vector<std::vector<std::uint8_t>*> tables;
  for (const auto& p : t.predicates) tables.push_back(&x.table(p));
  const std::size_t per = tables.empty() ? 0 : tables.front()->size();
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    std::size_t bit = 0;
    for (auto* tab : tables)
      for (std::size_t j = 0; j < per; ++j, ++bit) (*tab)[j] = (code >> bit) & 1u;
    if (eval.eval(x, s)) return true;
  }
  return false;
}

}  // namespace loopfo
