#pragma once

#include <memory>
#include <optional>
#include <string>

#include "loopfo/formula.hpp"

namespace loopfo {

enum class ProverStatus { Theorem, CounterSatisfiable, Unknown };

const char* prover_status_name(ProverStatus s);

// Decides (or gives up on) validity of a pure FO formula; open formulas are
// read universally closed.
class Prover {
 public:
  virtual ~Prover() = default;
  virtual ProverStatus prove(const Formula& conjecture) = 0;
  virtual std::string name() const = 0;
};

// Runs an external command on a TPTP problem file and reads its SZS status
// line. `{}` in the template is replaced by the file path; otherwise the path
// is appended. Throws ProverError when the process fails or reports no status.
class ExternalProver : public Prover {
 public:
  explicit ExternalProver(std::string command_template);
  ProverStatus prove(const Formula& conjecture) override;
  std::string name() const override { return "external"; }

 private:
  std::string template_;
};

// Sound but incomplete: proves formulas whose propositional abstraction is a
// tautology, and monadic formulas by exhausting the finite-model bound.
class InternalProver : public Prover {
 public:
  explicit InternalProver(std::uint64_t structure_cap = 200000) : cap_(structure_cap) {}
  ProverStatus prove(const Formula& conjecture) override;
  std::string name() const override { return "internal"; }

 private:
  std::uint64_t cap_;
};

ProverStatus parse_szs_status(const std::string& output);
bool propositional_tautology(const Formula& f);

// External prover from the explicit command, else LOOPFO_PROVER_CMD, else the
// internal one.
std::unique_ptr<Prover> make_prover(const std::optional<std::string>& command);

}  // namespace loopfo
