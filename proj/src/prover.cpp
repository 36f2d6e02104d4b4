#include "loopfo/prover.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>
#include <unordered_map>

#include "loopfo/error.hpp"
#include "loopfo/structure.hpp"
#include "loopfo/syntax.hpp"
#include "loopfo/tptp.hpp"

namespace loopfo {

const char* prover_status_name(ProverStatus s) {
  switch (s) {
    case ProverStatus::Theorem:
      return "Theorem";
    case ProverStatus::CounterSatisfiable:
      return "CounterSatisfiable";
    case ProverStatus::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

ProverStatus parse_szs_status(const std::string& output) {
  static const std::regex re(R"(SZS status\s+([A-Za-z]+))");
  std::smatch m;
  if (!std::regex_search(output, m, re)) throw ProverError("prover output has no SZS status line");
  const std::string st = m[1];
  if (st == "Theorem" || st == "Tautology" || st == "Equivalent") return ProverStatus::Theorem;
  if (st == "CounterSatisfiable" || st == "CounterTheorem") return ProverStatus::CounterSatisfiable;
  if (st == "Unknown" || st == "GaveUp" || st == "Timeout" || st == "ResourceOut" || st == "Incomplete" ||
      st == "MemoryOut" || st == "Inappropriate")
    return ProverStatus::Unknown;
  throw ProverError("prover reported SZS status " + st);
}

ExternalProver::ExternalProver(std::string command_template) : template_(std::move(command_template)) {}

ProverStatus ExternalProver::prove(const Formula& conjecture) {
  namespace fs = std::filesystem;
  std::string path_tmpl = (fs::temp_directory_path() / "loopfo-XXXXXX").string();
  std::vector<char> buf(path_tmpl.begin(), path_tmpl.end());
  buf.push_back('\0');
  int fd = mkstemp(buf.data());
  if (fd < 0) throw ProverError("cannot create a temporary problem file");
  close(fd);
  const std::string path(buf.data());
  {
    std::ofstream out(path);
    out << export_tptp("goal", "conjecture", conjecture) << '\n';
  }
  std::string cmd = template_;
  if (auto pos = cmd.find("{}"); pos != std::string::npos)
    cmd.replace(pos, 2, path);
  else
    cmd += " " + path;
  cmd += " 2>&1";

  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    fs::remove(path);
    throw ProverError("cannot start prover command: " + template_);
  }
  std::array<char, 4096> chunk{};
  while (std::size_t got = std::fread(chunk.data(), 1, chunk.size(), pipe)) output.append(chunk.data(), got);
  int status = pclose(pipe);
  fs::remove(path);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) == 126 || WEXITSTATUS(status) == 127)
    throw ProverError("prover command failed: " + template_);
  return parse_szs_status(output);
}

namespace {

// Maximal non-propositional subformulas become propositional variables.
class Abstraction {
 public:
  int index(const Formula& f) {
    auto [it, inserted] = ids_.emplace(f, static_cast<int>(ids_.size()));
    return it->second;
  }
  std::size_t size() const { return ids_.size(); }

  int compile(const Formula& f) {
    Op op{f.kind(), -1, -1, -1};
    switch (f.kind()) {
      case Kind::Falsum:
        break;
      case Kind::Equal:
        if (f.args()[0] == f.args()[1]) {
          op.kind = Kind::Not;
          op.a = compile(Formula::falsum());
          break;
        }
        [[fallthrough]];
      case Kind::Atom:
      case Kind::Exists:
      case Kind::Forall:
        op.kind = Kind::Atom;
        op.var = index(f);
        break;
      case Kind::Not:
        op.a = compile(f.child());
        break;
      case Kind::And:
      case Kind::Or:
        op.a = compile(f.left());
        op.b = compile(f.right());
        break;
      default:
        throw InputError("propositional abstraction of a non-FO formula");
    }
    ops_.push_back(op);
    return static_cast<int>(ops_.size()) - 1;
  }

  bool eval(int i, std::uint64_t bits) const {
    const Op& op = ops_[i];
    switch (op.kind) {
      case Kind::Falsum:
        return false;
      case Kind::Atom:
        return (bits >> op.var) & 1u;
      case Kind::Not:
        return !eval(op.a, bits);
      case Kind::And:
        return eval(op.a, bits) && eval(op.b, bits);
      case Kind::Or:
        return eval(op.a, bits) || eval(op.b, bits);
      default:
        return false;
    }
  }

 private:
  struct Op {
    Kind kind;
    int a, b, var;
  };
  std::unordered_map<Formula, int, FormulaHash> ids_;
  std::vector<Op> ops_;
};

unsigned quantifier_rank(const Formula& f) {
  switch (f.kind()) {
    case Kind::Exists:
    case Kind::Forall:
      return 1 + quantifier_rank(f.child());
    case Kind::Not:
    case Kind::Label:
      return quantifier_rank(f.child());
    case Kind::And:
    case Kind::Or:
      return std::max(quantifier_rank(f.left()), quantifier_rank(f.right()));
    default:
      return 0;
  }
}

// Some structure of size <= max_size falsifies f; nullopt if the enumeration
// would exceed `cap` evaluations.
std::optional<bool> countermodel_exists(const Formula& f, std::size_t max_size, std::uint64_t cap) {
  const Vocabulary vocab = vocabulary_of(f);
  const auto fv = free_variables(f);
  const std::vector<Variable> vars(fv.begin(), fv.end());
  std::uint64_t work = 0;
  for (std::size_t n = 1; n <= max_size; ++n) {
    const std::uint64_t upto = structure_count(vocab, n);
    if (upto == UINT64_MAX) return std::nullopt;
    const std::uint64_t per = upto - structure_count(vocab, n - 1);
    std::uint64_t assigns = 1;
    for (std::size_t i = 0; i < vars.size() && assigns <= cap; ++i) assigns *= n;
    if (per > cap || assigns > cap || per * assigns > cap - work) return std::nullopt;
    work += per * assigns;
  }
  FoEvaluator eval(f);
  StructureEnumerator en(vocab, max_size);
  Structure m(1, vocab);
  while (en.next(m))
    for (const Assignment& s : all_assignments(vars, m.domain_size()))
      if (!eval.eval(m, s)) return true;
  return false;
}

}  // namespace

bool propositional_tautology(const Formula& f) {
  Formula g = f;
  while (g.is(Kind::Forall)) g = g.child();
  Abstraction abs;
  int root = abs.compile(g);
  if (abs.size() > 20) return false;
  const std::uint64_t rows = std::uint64_t{1} << abs.size();
  for (std::uint64_t bits = 0; bits < rows; ++bits)
    if (!abs.eval(root, bits)) return false;
  return true;
}

ProverStatus InternalProver::prove(const Formula& conjecture) {
  if (!is_pure_fo(conjecture)) throw InputError("the prover accepts pure first-order formulas only");
  if (propositional_tautology(conjecture)) return ProverStatus::Theorem;
  const Vocabulary vocab = vocabulary_of(conjecture);
  bool monadic = true;
  std::size_t unary = 0;
  for (const auto& [p, a] : vocab) {
    if (a > 1) monadic = false;
    if (a == 1) ++unary;
  }
  if (monadic && unary < 16) {
    // A monadic sentence of quantifier rank q with k unary predicates that
    // has a model has one with at most q * 2^k elements.
    std::size_t q = quantifier_rank(conjecture) + free_variables(conjecture).size();
    std::size_t bound = std::max<std::size_t>(1, q << unary);
    if (auto found = countermodel_exists(conjecture, bound, cap_))
      return *found ? ProverStatus::CounterSatisfiable : ProverStatus::Theorem;
    return ProverStatus::Unknown;
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    auto found = countermodel_exists(conjecture, n, cap_);
    if (!found) break;
    if (*found) return ProverStatus::CounterSatisfiable;
  }
  return ProverStatus::Unknown;
}

std::unique_ptr<Prover> make_prover(const std::optional<std::string>& command) {
  if (command && !command->empty()) return std::make_unique<ExternalProver>(*command);
  const char* env = std::getenv("LOOPFO_PROVER_CMD");
  if (env != nullptr && *env != '\0') return std::make_unique<ExternalProver>(env);
  return std::make_unique<InternalProver>();
}

}  // namespace loopfo
