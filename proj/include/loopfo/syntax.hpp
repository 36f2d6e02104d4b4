#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loopfo/error.hpp"
#include "loopfo/formula.hpp"

namespace loopfo {

// Parses against a declared vocabulary: undeclared predicates and arity
// mismatches are errors.
Formula parse_formula(std::string_view text, const Vocabulary& vocab);
// Parses and infers the vocabulary from the text (arities must be consistent).
Formula parse_formula(std::string_view text);

std::string print_formula(const Formula& f);

// Predicates used by f with their arities; throws InputError on clashes.
Vocabulary vocabulary_of(const Formula& f);
bool is_label_token(std::string_view name);

std::set<Variable> free_variables(const Formula& f);
// Every variable of f (free or bound) in order of first occurrence.
std::vector<Variable> all_variables(const Formula& f);

std::optional<OccPath> resolve_reference(const Formula& f, const OccPath& claim);
// Claims whose reference is the label occurrence at `label`.
std::vector<OccPath> strict_scope_claims(const Formula& f, const OccPath& label);
std::vector<OccPath> free_claims(const Formula& f);
// Label occurrences with no claim in their strict scope.
bool is_dummy_label(const Formula& f, const OccPath& label);

enum class Polarity { Positive, Negative };
Polarity occurrence_polarity(const Formula& f, const OccPath& p);

bool is_regular(const Formula& f);
bool is_pure_fo(const Formula& f);
// Label ids used anywhere in f, on labels or claims.
std::set<LabelId> label_ids(const Formula& f);
// Smallest id >= 1 not in `used`.
LabelId fresh_label(const std::set<LabelId>& used);
LabelId fresh_label(const Formula& f);
// Maximum number of nested label occurrences on a root-to-leaf path.
std::size_t label_nesting_depth(const Formula& f);

// Returns 1 or 2 for the violated safety condition, or nullopt when the
// rename of the label at `label` to `new_id` is safe.
std::optional<int> rename_violation(const Formula& f, const OccPath& label, LabelId new_id);
Formula rename_label(const Formula& f, const OccPath& label, LabelId new_id);

// The deterministic renaming steps (label path, new id) in application order.
std::vector<std::pair<OccPath, LabelId>> regularization_steps(const Formula& f);
Formula regularize(const Formula& f);

// Replaces free occurrences of variable x by y. Returns nullopt if a
// replaced occurrence would be captured by a quantifier on y.
std::optional<Formula> substitute_variable(const Formula& f, const Variable& x, const Variable& y);

}  // namespace loopfo
