#include "loopfo/rules.hpp"

#include <algorithm>
#include <cctype>
#include <array>
#include <set>
#include <utility>

#include "loopfo/syntax.hpp"
#include "loopfo/transform.hpp"

namespace loopfo {

namespace {

constexpr std::array<std::pair<RuleId, const char*>, 36> kNames{{
    {RuleId::AndIntro, "AndIntro"},
    {RuleId::AndElim1, "AndElim1"},
    {RuleId::AndElim2, "AndElim2"},
    {RuleId::OrIntro1, "OrIntro1"},
    {RuleId::OrIntro2, "OrIntro2"},
    {RuleId::OrElim, "OrElim"},
    {RuleId::BotIntro, "BotIntro"},
    {RuleId::BotElim, "BotElim"},
    {RuleId::SubstShift, "SubstShift"},
    {RuleId::SubstShiftRev, "SubstShiftRev"},
    {RuleId::SubstCopyElim, "SubstCopyElim"},
    {RuleId::SubstCopyElimRev, "SubstCopyElimRev"},
    {RuleId::LDualIntro, "LDualIntro"},
    {RuleId::LDualIntroRev, "LDualIntroRev"},
    {RuleId::LDummyIntroElim, "LDummyIntroElim"},
    {RuleId::LDummyIntroElimRev, "LDummyIntroElimRev"},
    {RuleId::LCRename, "LCRename"},
    {RuleId::CLFreeElim, "CLFreeElim"},
    {RuleId::DualNotAnd, "DualNotAnd"},
    {RuleId::DualNotOr, "DualNotOr"},
    {RuleId::DualNotNot, "DualNotNot"},
    {RuleId::DualNotForall, "DualNotForall"},
    {RuleId::DualNotExists, "DualNotExists"},
    {RuleId::DualNotLabel, "DualNotLabel"},
    {RuleId::ForallIntro, "ForallIntro"},
    {RuleId::ForallElim, "ForallElim"},
    {RuleId::ExistsIntro, "ExistsIntro"},
    {RuleId::ExistsElim, "ExistsElim"},
    {RuleId::NegIntroFO, "NegIntroFO"},
    {RuleId::NegElimFO, "NegElimFO"},
    {RuleId::EqIntro, "EqIntro"},
    {RuleId::EqElim1, "EqElim1"},
    {RuleId::EqElim2, "EqElim2"},
    {RuleId::Premise, "Premise"},
    {RuleId::Assume, "Assume"},
    {RuleId::Discharge, "Discharge"},
}};

[[noreturn]] void fail(const char* code, const std::string& msg) { throw RuleError(code, msg); }

const Formula& at(const Formula& f, const OccPath& p) {
  if (!valid_path(f, p)) fail("BadPath", "no occurrence at path '" + p.str() + "'");
  return subformula(f, p);
}

const Formula& label_at(const Formula& f, const OccPath& p) {
  const Formula& l = at(f, p);
  if (!l.is(Kind::Label)) fail("NotARedex", "no label at path '" + p.str() + "'");
  return l;
}

std::size_t occurrence_negations(const Formula& f, const OccPath& p) {
  std::size_t n = 0;
  const Formula* cur = &f;
  for (auto s : p.steps) {
    if (cur->is(Kind::Not)) ++n;
    cur = &cur->child(s);
  }
  return n;
}

std::string label_text(LabelId id) { return "L" + std::to_string(id); }

LabelId parse_label_value(const std::string& v) {
  if (!is_label_token(v)) fail("BadParameter", "expected a label token, got '" + v + "'");
  return static_cast<LabelId>(std::stoul(v.substr(1)));
}

void check_selection(const Formula& f, const OccPath& label, const std::vector<OccPath>& claims) {
  if (claims.empty()) fail("MissingParameter", "no claim occurrences selected");
  const auto strict = strict_scope_claims(f, label);
  std::set<OccPath> seen;
  for (const auto& c : claims) {
    if (!seen.insert(c).second) fail("BadParameter", "occurrence '" + c.str() + "' selected twice");
    if (std::find(strict.begin(), strict.end(), c) == strict.end())
      fail("NotInStrictScope", "occurrence '" + c.str() + "' is not a claim in the strict scope of the label");
  }
}

Formula replace_all(Formula f, const std::vector<OccPath>& paths, const Formula& g) {
  for (const auto& p : paths) f = replace_at(f, p, g);
  return f;
}

// Shared by Subst-Shift (copy = whole labelled occurrence) and
// Subst-Copy-Elim (copy = body).
Formula subst_forward(const Formula& f, const OccPath& path, const RuleParams& prm, bool whole) {
  const Formula& l = label_at(f, path);
  if (!is_regular(f)) fail("NotRegular", "top formula not regular");
  check_selection(f, path, prm.claims);
  Formula copy = whole ? l : l.child();
  return replace_all(f, prm.claims, copy);
}

Formula subst_reverse(RuleId fwd, const Formula& g, const OccPath& path, const RuleParams& prm) {
  const Formula& l = label_at(g, path);
  if (prm.claims.empty()) fail("MissingParameter", "no occurrences selected");
  for (const auto& c : prm.claims) {
    at(g, c);
    if (!path.is_prefix_of(c) || c == path) fail("NotInStrictScope", "occurrence '" + c.str() + "' is outside the label");
    for (const auto& d : prm.claims)
      if (c != d && c.is_prefix_of(d)) fail("BadParameter", "selected occurrences are nested");
  }
  Formula f = replace_all(g, prm.claims, Formula::claim(l.label()));
  if (!(apply_rewrite(fwd, f, path, prm) == g)) fail("NotARedex", "selected occurrences are not copies of the label");
  return f;
}

Formula dual_forward(RuleId r, const Formula& g) {
  if (!g.is(Kind::Not)) fail("NotARedex", std::string(rule_name(r)) + " needs a negation");
  const Formula& c = g.child();
  switch (r) {
    case RuleId::DualNotAnd:
      if (!c.is(Kind::And)) break;
      return Formula::disjunction(Formula::negation(c.left()), Formula::negation(c.right()));
    case RuleId::DualNotOr:
      if (!c.is(Kind::Or)) break;
      return Formula::conjunction(Formula::negation(c.left()), Formula::negation(c.right()));
    case RuleId::DualNotNot:
      if (!c.is(Kind::Not)) break;
      return c.child();
    case RuleId::DualNotForall:
      if (!c.is(Kind::Forall)) break;
      return Formula::exists(c.var(), Formula::negation(c.child()));
    case RuleId::DualNotExists:
      if (!c.is(Kind::Exists)) break;
      return Formula::forall(c.var(), Formula::negation(c.child()));
    case RuleId::DualNotLabel: {
      if (!c.is(Kind::Label)) break;
      Formula body = c.child();
      for (const auto& q : strict_scope_claims(g, OccPath{0})) {
        OccPath rel(std::vector<std::uint32_t>(q.steps.begin() + 2, q.steps.end()));
        body = replace_at(body, rel, Formula::negation(Formula::claim(c.label())));
      }
      return Formula::labeled(c.label(), Formula::negation(body));
    }
    default:
      break;
  }
  fail("NotARedex", std::string("occurrence is not a redex of ") + rule_name(r));
}

Formula dual_reverse(RuleId r, const Formula& g) {
  auto negated = [](const Formula& x) { return x.is(Kind::Not); };
  switch (r) {
    case RuleId::DualNotAnd:
      if (g.is(Kind::Or) && negated(g.left()) && negated(g.right()))
        return Formula::negation(Formula::conjunction(g.left().child(), g.right().child()));
      break;
    case RuleId::DualNotOr:
      if (g.is(Kind::And) && negated(g.left()) && negated(g.right()))
        return Formula::negation(Formula::disjunction(g.left().child(), g.right().child()));
      break;
    case RuleId::DualNotNot:
      return Formula::negation(Formula::negation(g));
    case RuleId::DualNotForall:
      if (g.is(Kind::Exists) && negated(g.child())) return Formula::negation(Formula::forall(g.var(), g.child().child()));
      break;
    case RuleId::DualNotExists:
      if (g.is(Kind::Forall) && negated(g.child())) return Formula::negation(Formula::exists(g.var(), g.child().child()));
      break;
    case RuleId::DualNotLabel: {
      if (!g.is(Kind::Label) || !negated(g.child())) break;
      Formula body = g.child().child();
      for (const auto& q : strict_scope_claims(g, OccPath{})) {
        if (q.size() < 3) fail("NotARedex", "claim of the label is not negated inside the body");
        OccPath parent(std::vector<std::uint32_t>(q.steps.begin() + 2, q.steps.end() - 1));
        if (!subformula(body, parent).is(Kind::Not))
          fail("NotARedex", "claim of the label is not negated inside the body");
        body = replace_at(body, parent, Formula::claim(g.label()));
      }
      return Formula::negation(Formula::labeled(g.label(), body));
    }
    default:
      break;
  }
  fail("NotARedex", std::string("occurrence is not a reverse redex of ") + rule_name(r));
}

}  // namespace

const char* rule_name(RuleId r) {
  for (const auto& [id, name] : kNames)
    if (id == r) return name;
  return "?";
}

std::optional<RuleId> parse_rule_name(const std::string& s) {
  for (const auto& [id, name] : kNames)
    if (s == name) return id;
  return std::nullopt;
}

bool is_duality(RuleId r) {
  switch (r) {
    case RuleId::DualNotAnd:
    case RuleId::DualNotOr:
    case RuleId::DualNotNot:
    case RuleId::DualNotForall:
    case RuleId::DualNotExists:
    case RuleId::DualNotLabel:
      return true;
    default:
      return false;
  }
}

bool is_rewrite_rule(RuleId r) {
  switch (r) {
    case RuleId::BotElim:
    case RuleId::SubstShift:
    case RuleId::SubstShiftRev:
    case RuleId::SubstCopyElim:
    case RuleId::SubstCopyElimRev:
    case RuleId::LDualIntro:
    case RuleId::LDualIntroRev:
    case RuleId::LDummyIntroElim:
    case RuleId::LDummyIntroElimRev:
    case RuleId::LCRename:
    case RuleId::CLFreeElim:
      return true;
    default:
      return is_duality(r);
  }
}

std::string print_params(const RuleParams& p) {
  std::vector<std::string> parts;
  if (!p.claims.empty()) {
    std::string s = "claims=";
    for (std::size_t i = 0; i < p.claims.size(); ++i) s += (i ? "|" : "") + p.claims[i].str();
    parts.push_back(s);
  }
  if (p.fresh) parts.push_back("fresh=" + label_text(*p.fresh));
  if (p.label) parts.push_back("label=" + label_text(*p.label));
  for (const auto& s : p.subst) parts.push_back("subst=" + print_formula(s));
  if (p.var) parts.push_back("var=" + *p.var);
  if (p.reverse) parts.push_back("dir=rev");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

RuleParams parse_params(const std::string& text) {
  RuleParams p;
  std::vector<std::string> items;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty() || !items.empty()) items.push_back(cur);
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  for (const auto& raw : items) {
    std::string item = trim(raw);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) fail("BadParameter", "parameter '" + item + "' has no value");
    std::string key = trim(item.substr(0, eq));
    std::string val = trim(item.substr(eq + 1));
    try {
      if (key == "claims") {
        std::size_t start = 0;
        while (true) {
          auto bar = val.find('|', start);
          p.claims.push_back(OccPath::parse(trim(val.substr(start, bar - start))));
          if (bar == std::string::npos) break;
          start = bar + 1;
        }
      } else if (key == "fresh") {
        p.fresh = parse_label_value(val);
      } else if (key == "label") {
        p.label = parse_label_value(val);
      } else if (key == "subst") {
        p.subst.push_back(parse_formula(val));
      } else if (key == "var") {
        if (val.empty() || !std::islower(static_cast<unsigned char>(val[0])))
          fail("BadParameter", "var= expects a variable");
        p.var = val;
      } else if (key == "dir") {
        if (val != "rev" && val != "fwd") fail("BadParameter", "dir= expects rev or fwd");
        p.reverse = val == "rev";
      } else {
        fail("BadParameter", "unknown parameter '" + key + "'");
      }
    } catch (const RuleError&) {
      throw;
    } catch (const Error& e) {
      fail("BadParameter", "parameter '" + key + "': " + e.what());
    }
  }
  return p;
}

std::optional<RuleId> duality_redex(const Formula& g) {
  if (!g.is(Kind::Not)) return std::nullopt;
  switch (g.child().kind()) {
    case Kind::And:
      return RuleId::DualNotAnd;
    case Kind::Or:
      return RuleId::DualNotOr;
    case Kind::Not:
      return RuleId::DualNotNot;
    case Kind::Forall:
      return RuleId::DualNotForall;
    case Kind::Exists:
      return RuleId::DualNotExists;
    case Kind::Label:
      return RuleId::DualNotLabel;
    default:
      return std::nullopt;
  }
}

Formula apply_rewrite(RuleId rule, const Formula& f, const OccPath& path, const RuleParams& prm) {
  if (is_duality(rule)) {
    const Formula& g = at(f, path);
    return replace_at(f, path, prm.reverse ? dual_reverse(rule, g) : dual_forward(rule, g));
  }
  switch (rule) {
    case RuleId::SubstShift:
      return subst_forward(f, path, prm, true);
    case RuleId::SubstCopyElim:
      return subst_forward(f, path, prm, false);
    case RuleId::SubstShiftRev:
      return subst_reverse(RuleId::SubstShift, f, path, prm);
    case RuleId::SubstCopyElimRev:
      return subst_reverse(RuleId::SubstCopyElim, f, path, prm);
    case RuleId::LDualIntro: {
      const Formula& l = label_at(f, path);
      if (!prm.fresh) fail("MissingParameter", "LDualIntro needs fresh=");
      if (label_ids(f).count(*prm.fresh)) fail("NotFresh", label_text(*prm.fresh) + " already occurs in the formula");
      Formula body = l.child();
      for (const auto& q : strict_scope_claims(f, path)) {
        if (!at(f, q.parent()).is(Kind::Not)) continue;
        OccPath rel(std::vector<std::uint32_t>(q.steps.begin() + path.size() + 1, q.steps.end()));
        body = replace_at(body, rel, Formula::claim(*prm.fresh));
      }
      return replace_at(f, path, Formula::labeled(*prm.fresh, Formula::labeled(l.label(), body)));
    }
    case RuleId::LDualIntroRev: {
      const Formula& outer = label_at(f, path);
      if (!outer.child().is(Kind::Label)) fail("NotARedex", "LDualIntroRev needs a label directly under the label");
      if (prm.fresh && *prm.fresh != outer.label()) fail("BadParameter", "fresh= does not match the outer label");
      const LabelId inner = outer.child().label();
      Formula g = replace_all(f, strict_scope_claims(f, path), Formula::claim(inner));
      g = replace_at(g, path, subformula(g, path.child(0)));
      RuleParams fwd;
      fwd.fresh = outer.label();
      if (!(apply_rewrite(RuleId::LDualIntro, g, path, fwd) == f))
        fail("NotARedex", "occurrence is not the result of LDualIntro");
      return g;
    }
    case RuleId::LDummyIntroElim: {
      const Formula& g = at(f, path);
      if (!prm.label) fail("MissingParameter", "LDummyIntroElim needs label=");
      Formula out = replace_at(f, path, Formula::labeled(*prm.label, g));
      if (!is_dummy_label(out, path)) fail("NotDummy", label_text(*prm.label) + " would not be a dummy label here");
      return out;
    }
    case RuleId::LDummyIntroElimRev: {
      const Formula& l = label_at(f, path);
      if (prm.label && *prm.label != l.label()) fail("BadParameter", "label= does not match the label");
      if (!is_dummy_label(f, path)) fail("NotDummy", label_text(l.label()) + " is not a dummy label");
      return replace_at(f, path, l.child());
    }
    case RuleId::LCRename: {
      label_at(f, path);
      if (!prm.label) fail("MissingParameter", "LCRename needs label=");
      if (auto v = rename_violation(f, path, *prm.label)) {
        if (*v == 1) fail("RenameUnsafe1", "unsafe rename: the labelled subformula contains a free claim of the new label");
        fail("RenameUnsafe2", "unsafe rename: a renamed claim lies in the scope of an inner occurrence of the new label");
      }
      return rename_label(f, path, *prm.label);
    }
    case RuleId::CLFreeElim: {
      const Formula& c = at(f, path);
      if (!c.is(Kind::Claim)) fail("NotARedex", "no claim at path '" + path.str() + "'");
      if (resolve_reference(f, path)) fail("NotFree", "the claim is not free");
      if (prm.subst.size() != 1) fail("MissingParameter", "CLFreeElim needs exactly one subst=");
      return replace_at(f, path, prm.subst.front());
    }
    case RuleId::BotElim: {
      if (!path.empty()) fail("BadParameter", "BotElim takes occurrences via claims=, not a context path");
      if (!is_strong_nnf(f)) fail("NotStrongNnf", "formula is not in strong negation normal form");
      if (prm.claims.empty()) fail("MissingParameter", "BotElim needs claims=");
      if (prm.subst.size() != 1 && prm.subst.size() != prm.claims.size())
        fail("BadParameter", "BotElim needs one subst= or one per occurrence");
      std::set<OccPath> seen;
      for (const auto& q : prm.claims) {
        if (!seen.insert(q).second) fail("BadParameter", "occurrence '" + q.str() + "' selected twice");
        if (!at(f, q).is(Kind::Falsum)) fail("NotARedex", "no bot at path '" + q.str() + "'");
        if (occurrence_negations(f, q) > 0) fail("BotUnderNegation", "replaced bot under negation");
      }
      Formula out = f;
      for (std::size_t i = 0; i < prm.claims.size(); ++i)
        out = replace_at(out, prm.claims[i], prm.subst.size() == 1 ? prm.subst[0] : prm.subst[i]);
      return out;
    }
    default:
      fail("NotARedex", std::string(rule_name(rule)) + " is not a rewrite rule");
  }
}

}  // namespace loopfo
