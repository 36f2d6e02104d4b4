#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loopfo {

enum class ErrorKind { Syntax, Input, Budget, Prover, Rule };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(ErrorKind::Syntax, std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Malformed input that is not a grammar error: bad model files, unsuitable
// assignments, invalid paths, non-FO input where FO is required.
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(ErrorKind::Input, msg) {}
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& msg) : Error(ErrorKind::Budget, msg) {}
};

class ProverError : public Error {
 public:
  explicit ProverError(const std::string& msg) : Error(ErrorKind::Prover, msg) {}
};

// A rule application that is not a redex or violates a side condition.
// `code` is a stable identifier such as NotRegular or BotUnderNegation.
class RuleError : public Error {
 public:
  RuleError(std::string code, const std::string& msg) : Error(ErrorKind::Rule, msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace loopfo
