#include "loopfo/proof.hpp"

#include <map>
#include <set>
#include <sstream>

#include "loopfo/error.hpp"
#include "loopfo/syntax.hpp"

namespace loopfo {

namespace {

[[noreturn]] void fail(const char* code, const std::string& msg) { throw RuleError(code, msg); }

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::optional<RuleId> forward_of(RuleId r) {
  switch (r) {
    case RuleId::SubstShiftRev:
      return RuleId::SubstShift;
    case RuleId::SubstCopyElimRev:
      return RuleId::SubstCopyElim;
    case RuleId::LDualIntroRev:
      return RuleId::LDualIntro;
    default:
      return std::nullopt;
  }
}

void need_inputs(const std::vector<RuleInput>& in, std::size_t n, std::size_t subproofs, RuleId r) {
  std::size_t subs = 0;
  for (const auto& i : in) subs += i.assumption.has_value();
  if (in.size() != n || subs != subproofs)
    fail("BadInputs", std::string(rule_name(r)) + " takes " + std::to_string(n) + " input(s), of which " +
                          std::to_string(subproofs) + " discharged subproof(s)");
}

const Formula& plain(const RuleInput& in, RuleId r) {
  if (in.assumption) fail("BadInputs", std::string(rule_name(r)) + " cannot use a discharged subproof here");
  return in.formula;
}

const RuleInput& sub(const RuleInput& in, RuleId r) {
  if (!in.assumption) fail("BadInputs", std::string(rule_name(r)) + " needs a discharged subproof here");
  return in;
}

void need_fo(const Formula& f, RuleId r) {
  if (!is_pure_fo(f)) fail("NotFO", std::string(rule_name(r)) + " applies to first-order formulas only");
}

const Variable& need_var(const Step& s) {
  if (!s.params.var) fail("MissingParameter", std::string(rule_name(s.rule)) + " needs var=");
  return *s.params.var;
}

Formula subst_var(const Formula& f, const Variable& x, const Variable& y) {
  auto r = substitute_variable(f, x, y);
  if (!r) fail("Capture", "substituting " + y + " for " + x + " would be captured");
  return *r;
}

void eigen(const Variable& y, const std::vector<Formula>& open, RuleId r) {
  for (const auto& g : open)
    if (free_variables(g).count(y))
      fail("Eigenvariable", std::string(rule_name(r)) + ": " + y + " is free in an undischarged premise or assumption");
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
  Derivation d;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto where = [&](const std::string& msg) { return "line " + std::to_string(lineno) + ": " + msg; };
    std::vector<std::string> f;
    std::size_t start = 0;
    for (int i = 0; i < 5; ++i) {
      auto semi = t.find(';', start);
      if (semi == std::string::npos) throw InputError(where("expected 6 ';'-separated fields"));
      f.push_back(trim(std::string_view(t).substr(start, semi - start)));
      start = semi + 1;
    }
    f.push_back(trim(std::string_view(t).substr(start)));
    Step s;
    s.id = f[0];
    if (s.id.empty()) throw InputError(where("missing step id"));
    const std::string& rule = f[1];
    if (rule == "premise") {
      s.type = StepType::Premise;
      s.rule = RuleId::Premise;
    } else if (rule == "assume") {
      s.type = StepType::Assume;
      s.rule = RuleId::Assume;
    } else if (rule.rfind("discharge", 0) == 0) {
      s.type = StepType::Discharge;
      s.rule = RuleId::Discharge;
      s.discharged = trim(std::string_view(rule).substr(9));
      if (s.discharged.empty()) throw InputError(where("discharge needs the id of an assume step"));
    } else if (auto r = parse_rule_name(rule)) {
      if (*r == RuleId::Premise || *r == RuleId::Assume || *r == RuleId::Discharge)
        throw InputError(where("use the lowercase premise/assume/discharge forms"));
      s.type = StepType::Inference;
      s.rule = *r;
    } else {
      throw InputError(where("unknown rule '" + rule + "'"));
    }
    if (!f[2].empty()) s.inputs = split(f[2], ',');
    try {
      s.path = OccPath::parse(f[3]);
    } catch (const Error& e) {
      throw InputError(where(std::string("bad occurrence path: ") + e.what()));
    }
    try {
      s.params = parse_params(f[4]);
    } catch (const RuleError& e) {
      throw InputError(where(e.what()));
    }
    try {
      s.formula = parse_formula(f[5]);
    } catch (const Error& e) {
      throw InputError(where(std::string("bad formula: ") + e.what()));
    }
    d.steps.push_back(std::move(s));
  }
  return d;
}

std::string print_derivation(const Derivation& d) {
  std::string out;
  for (const auto& s : d.steps) {
    std::string rule;
    switch (s.type) {
      case StepType::Premise:
        rule = "premise";
        break;
      case StepType::Assume:
        rule = "assume";
        break;
      case StepType::Discharge:
        rule = "discharge " + s.discharged;
        break;
      case StepType::Inference:
        rule = rule_name(s.rule);
        break;
    }
    std::string inputs;
    for (std::size_t i = 0; i < s.inputs.size(); ++i) inputs += (i ? "," : "") + s.inputs[i];
    std::string line = s.id;
    for (const std::string& field : {rule, inputs, s.path.str(), print_params(s.params), print_formula(s.formula)})
      line += " ;" + (field.empty() ? std::string() : " " + field);
    out += line + "\n";
  }
  return out;
}

Formula apply_rule(const Step& s, const std::vector<RuleInput>& in, const std::vector<Formula>& open) {
  const RuleId r = s.rule;
  if (is_rewrite_rule(r)) {
    need_inputs(in, 1, 0, r);
    return apply_rewrite(r, in[0].formula, s.path, s.params);
  }
  if (!s.path.empty()) fail("BadParameter", std::string(rule_name(r)) + " takes no context path");
  switch (r) {
    case RuleId::AndIntro:
      need_inputs(in, 2, 0, r);
      return Formula::conjunction(in[0].formula, in[1].formula);
    case RuleId::AndElim1:
    case RuleId::AndElim2: {
      need_inputs(in, 1, 0, r);
      const Formula& a = in[0].formula;
      if (!a.is(Kind::And)) fail("NotARedex", std::string(rule_name(r)) + " needs a conjunction");
      return r == RuleId::AndElim1 ? a.left() : a.right();
    }
    case RuleId::OrIntro1:
    case RuleId::OrIntro2: {
      need_inputs(in, 1, 0, r);
      if (s.params.subst.size() != 1) fail("MissingParameter", std::string(rule_name(r)) + " needs subst=<other disjunct>");
      return r == RuleId::OrIntro1 ? Formula::disjunction(in[0].formula, s.params.subst[0])
                                   : Formula::disjunction(s.params.subst[0], in[0].formula);
    }
    case RuleId::OrElim: {
      need_inputs(in, 3, 2, r);
      const Formula& d = plain(in[0], r);
      const RuleInput& a = sub(in[1], r);
      const RuleInput& b = sub(in[2], r);
      if (!d.is(Kind::Or)) fail("NotARedex", "OrElim needs a disjunction");
      if (!(*a.assumption == d.left()) || !(*b.assumption == d.right()))
        fail("NotARedex", "OrElim subproofs must assume the two disjuncts");
      if (!(a.formula == b.formula)) fail("ConclusionMismatch", "OrElim subproofs end in different formulas");
      return a.formula;
    }
    case RuleId::BotIntro: {
      need_inputs(in, 2, 0, r);
      if (!(in[1].formula == Formula::negation(in[0].formula))) fail("NotARedex", "BotIntro needs a formula and its negation");
      return Formula::falsum();
    }
    case RuleId::NegIntroFO: {
      need_inputs(in, 1, 1, r);
      need_fo(*in[0].assumption, r);
      if (!in[0].formula.is(Kind::Falsum)) fail("NotARedex", "NegIntroFO needs a subproof ending in bot");
      return Formula::negation(*in[0].assumption);
    }
    case RuleId::NegElimFO: {
      need_inputs(in, 1, 1, r);
      const Formula& a = *in[0].assumption;
      if (!a.is(Kind::Not)) fail("NotARedex", "NegElimFO needs a subproof assuming a negation");
      need_fo(a.child(), r);
      if (!in[0].formula.is(Kind::Falsum)) fail("NotARedex", "NegElimFO needs a subproof ending in bot");
      return a.child();
    }
    case RuleId::ForallIntro: {
      need_inputs(in, 1, 0, r);
      const Variable& x = need_var(s);
      eigen(x, open, r);
      return Formula::forall(x, in[0].formula);
    }
    case RuleId::ForallElim: {
      need_inputs(in, 1, 0, r);
      const Formula& a = in[0].formula;
      if (!a.is(Kind::Forall)) fail("NotARedex", "ForallElim needs a universal formula");
      need_fo(a, r);
      return subst_var(a.child(), a.var(), need_var(s));
    }
    case RuleId::ExistsIntro: {
      need_inputs(in, 1, 0, r);
      if (s.params.subst.size() != 1 || !s.params.subst[0].is(Kind::Exists))
        fail("MissingParameter", "ExistsIntro needs subst=<exists x. phi>");
      const Formula& e = s.params.subst[0];
      need_fo(e, r);
      if (!(subst_var(e.child(), e.var(), need_var(s)) == in[0].formula))
        fail("NotARedex", "ExistsIntro input is not an instance of the quantified body");
      return e;
    }
    case RuleId::ExistsElim: {
      need_inputs(in, 2, 1, r);
      const Formula& e = plain(in[0], r);
      const RuleInput& b = sub(in[1], r);
      if (!e.is(Kind::Exists)) fail("NotARedex", "ExistsElim needs an existential formula");
      need_fo(e, r);
      const Variable& y = need_var(s);
      if (!(subst_var(e.child(), e.var(), y) == *b.assumption))
        fail("NotARedex", "ExistsElim subproof must assume the instance with the eigenvariable");
      if (free_variables(e).count(y) || free_variables(b.formula).count(y))
        fail("Eigenvariable", "ExistsElim: " + y + " is free in the existential or the conclusion");
      eigen(y, open, r);
      return b.formula;
    }
    case RuleId::EqIntro: {
      need_inputs(in, 0, 0, r);
      const Variable& x = need_var(s);
      return Formula::equal(x, x);
    }
    case RuleId::EqElim1:
    case RuleId::EqElim2: {
      need_inputs(in, 2, 0, r);
      const Formula& eq = in[0].formula;
      if (!eq.is(Kind::Equal)) fail("NotARedex", std::string(rule_name(r)) + " needs an equality as first input");
      need_fo(in[1].formula, r);
      const Variable& x = eq.args()[0];
      const Variable& y = eq.args()[1];
      return r == RuleId::EqElim1 ? subst_var(in[1].formula, x, y) : subst_var(in[1].formula, y, x);
    }
    default:
      fail("NotARedex", std::string(rule_name(r)) + " is not an inference rule");
  }
}

CheckResult check_derivation(const Derivation& d) {
  CheckResult res;
  struct Frame {
    std::size_t assume = 0;  // index of the assume step, unused for the root
    std::map<std::string, std::size_t> visible;
  };
  std::vector<Frame> frames(1);
  // Discharge step index -> assumption formula.
  std::map<std::size_t, Formula> closed;
  std::set<std::string> ids;

  auto lookup = [&](const std::string& id) -> std::optional<std::size_t> {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it)
      if (auto f = it->visible.find(id); f != it->visible.end()) return f->second;
    return std::nullopt;
  };

  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    auto error = [&](const std::string& code, const std::string& msg) {
      res.error = CheckError{i, s.id, code, msg};
      return res;
    };
    if (!ids.insert(s.id).second) return error("DuplicateId", "step id " + s.id + " is used twice");
    switch (s.type) {
      case StepType::Premise:
        if (!s.inputs.empty()) return error("BadInputs", "premises take no inputs");
        if (frames.size() == 1) res.premises.push_back(s.formula);
        frames.back().visible[s.id] = i;
        break;
      case StepType::Assume:
        if (!s.inputs.empty()) return error("BadInputs", "assumptions take no inputs");
        frames.push_back(Frame{i, {}});
        frames.back().visible[s.id] = i;
        break;
      case StepType::Discharge: {
        if (frames.size() == 1 || d.steps[frames.back().assume].id != s.discharged)
          return error("Scope", "discharge " + s.discharged + " does not close the innermost open assumption");
        const std::size_t last = i - 1;
        if (s.inputs.size() > 1 || (s.inputs.size() == 1 && s.inputs[0] != d.steps[last].id))
          return error("BadInputs", "discharge takes the last step of its subproof as input");
        if (!(d.steps[last].formula == s.formula))
          return error("ConclusionMismatch", "discharge formula differs from the last step of the subproof");
        closed.emplace(i, d.steps[frames.back().assume].formula);
        frames.pop_back();
        frames.back().visible[s.id] = i;
        break;
      }
      case StepType::Inference: {
        std::vector<RuleInput> inputs;
        for (const auto& id : s.inputs) {
          auto j = lookup(id);
          if (!j) return error("BadReference", "input " + id + " is not an earlier step in scope");
          RuleInput in{d.steps[*j].formula, std::nullopt};
          if (auto c = closed.find(*j); c != closed.end()) in.assumption = c->second;
          inputs.push_back(in);
        }
        std::vector<Formula> open;
        for (const auto& fr : frames)
          for (const auto& [id, j] : fr.visible)
            if (d.steps[j].type == StepType::Premise || d.steps[j].type == StepType::Assume)
              open.push_back(d.steps[j].formula);
        try {
          const auto fwd = forward_of(s.rule);
          const bool reverse = fwd || (is_duality(s.rule) && s.params.reverse);
          if (reverse) {
            if (inputs.size() != 1 || inputs[0].assumption) return error("BadInputs", "rewrite rules take one input");
            RuleParams p = s.params;
            p.reverse = false;
            Formula back = apply_rewrite(fwd ? *fwd : s.rule, s.formula, s.path, p);
            if (!(back == inputs[0].formula))
              return error("ConclusionMismatch", "the forward rule applied to the conclusion does not give the input");
          } else {
            Formula out = apply_rule(s, inputs, open);
            if (!(out == s.formula))
              return error("ConclusionMismatch", "conclusion differs from the rule's result " + print_formula(out));
          }
        } catch (const RuleError& e) {
          return error(e.code(), e.what());
        } catch (const Error& e) {
          return error("BadParameter", e.what());
        }
        frames.back().visible[s.id] = i;
        break;
      }
    }
  }
  if (frames.size() > 1) {
    const std::size_t i = d.steps.size() - 1;
    res.error = CheckError{i, d.steps[i].id, "UnclosedSubproof", "an assumption is never discharged"};
    return res;
  }
  if (!d.steps.empty()) res.conclusion = d.steps.back().formula;
  return res;
}

}  // namespace loopfo
