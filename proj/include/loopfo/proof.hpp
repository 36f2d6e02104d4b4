#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loopfo/formula.hpp"
#include "loopfo/rules.hpp"

namespace loopfo {

enum class StepType { Premise, Assume, Inference, Discharge };

struct Step {
  std::string id;
  StepType type = StepType::Inference;
  RuleId rule = RuleId::Premise;
  std::string discharged;  // Discharge: id of the closed assume step
  std::vector<std::string> inputs;
  OccPath path;
  RuleParams params;
  Formula formula;  // the premise, the assumption, or the conclusion
};

struct Derivation {
  std::vector<Step> steps;
};

// Line format: `id ; rule ; inputs ; path ; params ; formula`, `#` comments.
Derivation parse_derivation(std::string_view text);
std::string print_derivation(const Derivation& d);

struct CheckError {
  std::size_t index = 0;  // position in Derivation::steps
  std::string step_id;
  std::string code;
  std::string message;
};

struct CheckResult {
  std::optional<CheckError> error;
  std::vector<Formula> premises;
  std::optional<Formula> conclusion;  // last top-level step

  bool ok() const { return !error; }
};

CheckResult check_derivation(const Derivation& d);

// An input of a step: a formula, or for discharge steps the closed
// subproof `assumption ... formula`.
struct RuleInput {
  Formula formula;
  std::optional<Formula> assumption;
};

// Conclusion of the inference `step` from its inputs. `open_formulas` are the
// undischarged premises and assumptions in scope, used by the eigenvariable
// conditions. Throws RuleError.
Formula apply_rule(const Step& step, const std::vector<RuleInput>& inputs,
                   const std::vector<Formula>& open_formulas = {});

}  // namespace loopfo
