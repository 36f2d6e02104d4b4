#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopfo/error.hpp"
#include "loopfo/formula.hpp"

namespace loopfo {

enum class RuleId {
  AndIntro,
  AndElim1,
  AndElim2,
  OrIntro1,
  OrIntro2,
  OrElim,
  BotIntro,
  BotElim,
  SubstShift,
  SubstShiftRev,
  SubstCopyElim,
  SubstCopyElimRev,
  LDualIntro,
  LDualIntroRev,
  LDummyIntroElim,
  LDummyIntroElimRev,
  LCRename,
  CLFreeElim,
  DualNotAnd,
  DualNotOr,
  DualNotNot,
  DualNotForall,
  DualNotExists,
  DualNotLabel,
  ForallIntro,
  ForallElim,
  ExistsIntro,
  ExistsElim,
  NegIntroFO,
  NegElimFO,
  EqIntro,
  EqElim1,
  EqElim2,
  Premise,
  Assume,
  Discharge,
};

const char* rule_name(RuleId r);
std::optional<RuleId> parse_rule_name(const std::string& s);
bool is_duality(RuleId r);
// Single-premise rules rewriting one occurrence (or a set of occurrences).
bool is_rewrite_rule(RuleId r);

struct RuleParams {
  std::vector<OccPath> claims;  // selected occurrences (claims, or bot for BotElim)
  std::optional<LabelId> fresh;
  std::optional<LabelId> label;
  std::vector<Formula> subst;
  std::optional<Variable> var;
  bool reverse = false;  // dir=rev for the dualities

  bool operator==(const RuleParams&) const = default;
};

// Serialises as `k=v` pairs joined by commas, in a fixed key order.
std::string print_params(const RuleParams& p);
// Splits on commas at parenthesis depth 0. Throws RuleError(BadParameter).
RuleParams parse_params(const std::string& text);

struct Rewrite {
  RuleId rule;
  OccPath path;
  RuleParams params;
  Formula result;
};

// Applies a rewrite rule to f with context occurrence `path`. Throws
// RuleError naming the violated condition.
Formula apply_rewrite(RuleId rule, const Formula& f, const OccPath& path, const RuleParams& params);

// Duality redex (forward direction) at the root of g, if any.
std::optional<RuleId> duality_redex(const Formula& g);

}  // namespace loopfo
