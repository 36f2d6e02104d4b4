#pragma once

#include <string>

#include "loopfo/formula.hpp"

namespace loopfo {

// TPTP FOF term for a pure FO formula (no closure applied).
std::string tptp_term(const Formula& f);

// One `fof(name, role, term).` unit; free variables are universally closed
// in order of first occurrence. Throws InputError on non-FO input.
std::string export_tptp(const std::string& name, const std::string& role, const Formula& f);

}  // namespace loopfo
