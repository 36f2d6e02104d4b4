#include "loopfo/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "loopfo/approximant.hpp"
#include "loopfo/corpus.hpp"
#include "loopfo/error.hpp"
#include "loopfo/game.hpp"
#include "loopfo/proof.hpp"
#include "loopfo/proof_builders.hpp"
#include "loopfo/prover.hpp"
#include "loopfo/safety.hpp"
#include "loopfo/session.hpp"
#include "loopfo/structure.hpp"
#include "loopfo/syntax.hpp"
#include "loopfo/tptp.hpp"
#include "loopfo/transform.hpp"

namespace loopfo::cli {

namespace {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FormulaArg {
  std::string text;
  std::string file;

  void add(CLI::App* cmd) {
    auto* a = cmd->add_option("--formula", text, "formula text");
    auto* b = cmd->add_option("--formula-file", file, "file holding the formula");
    a->excludes(b);
  }
  Formula get(const Vocabulary* vocab = nullptr) const {
    if (text.empty() && file.empty()) throw CLI::RequiredError("--formula or --formula-file");
    const std::string src = file.empty() ? text : read_file(file);
    return vocab ? parse_formula(src, *vocab) : parse_formula(src);
  }
};

struct ModelArg {
  std::string model;
  std::string assign;

  void add(CLI::App* cmd, bool required) {
    auto* m = cmd->add_option("--model", model, "model file");
    if (required) m->required();
    cmd->add_option("--assign", assign, "assignment, e.g. x=0,y=2");
  }
  bool present() const { return !model.empty(); }
  Structure structure() const { return parse_structure(read_file(model)); }
  Assignment assignment() const { return parse_assignment(assign); }
};

class Output {
 public:
  Output(std::ostream& out, bool json) : out_(out), json_(json) {}
  bool json_mode() const { return json_; }
  void record(const json& j) {
    if (json_) out_ << j.dump() << '\n';
  }
  void line(const std::string& s) {
    if (!json_) out_ << s << '\n';
  }
  std::ostream& raw() { return out_; }

 private:
  std::ostream& out_;
  bool json_;
};

json structure_json(const Structure& m) {
  json rel = json::object();
  for (const auto& [p, a] : m.vocabulary()) {
    json tuples = json::array();
    for (const auto& t : m.tuples(p)) tuples.push_back(t);
    rel[p] = {{"arity", a}, {"tuples", tuples}};
  }
  return {{"domain", m.domain_size()}, {"relations", rel}};
}

json assignment_json(const Assignment& s) {
  json j = json::object();
  for (const auto& [v, e] : s) j[v] = e;
  return j;
}

std::string verdict_text(Verdict v) { return verdict_name(v); }

// ---------------------------------------------------------------- check

struct CheckCmd {
  FormulaArg formula;
  ModelArg model;
  std::string semantics = "bounded";
  std::optional<unsigned> clock;
  bool explain = false;
  std::string expect;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("check", "evaluate a formula on a finite structure");
    formula.add(c);
    model.add(c, true);
    c->add_option("--semantics", semantics)->check(CLI::IsMember({"bounded", "unbounded"}));
    c->add_option("--clock", clock, "solve the single clocked game G_N");
    c->add_flag("--explain", explain, "dump the arena with regions and strategy choices");
    c->add_option("--expect", expect, "exit 1 unless the verdict matches");
  }

  int run(Output& o) const {
    const Structure m = model.structure();
    const Assignment s = model.assignment();
    const Formula f = formula.get(&m.vocabulary());
    check_suitable(m, s, f);
    std::optional<Verdict> expected;
    if (!expect.empty()) {
      expected = parse_verdict(expect);
      if (!expected) throw CLI::ValidationError("--expect", "unknown verdict '" + expect + "'");
    }
    Verdict v;
    json j{{"command", "check"}, {"semantics", semantics}};
    if (clock) {
      v = verdict_clocked(m, s, f, *clock);
      j["clock"] = *clock;
      o.line(verdict_text(v));
      o.line("clock=" + std::to_string(*clock));
    } else {
      const VerdictReport rep = solve_unbounded(m, s, f);
      v = semantics == "bounded" ? verdict_bounded(m, s, f) : rep.verdict;
      const auto mc = minimal_clock(m, s, f);
      j["minimal_clock"] = mc ? json(*mc) : json(nullptr);
      j["positions"] = rep.positions;
      o.line(verdict_text(v));
      o.line("minimal_clock=" + (mc ? std::to_string(*mc) : std::string("none")));
    }
    j["verdict"] = verdict_text(v);
    if (explain) {
      const Arena a = build_arena(m, s, f, clock);
      const Solution sol = solve_reachability(a);
      const std::string dump = dump_arena(a, &sol);
      j["arena"] = dump;
      if (!o.json_mode()) o.raw() << dump;
    }
    o.record(j);
    return expected && *expected != v ? kMismatch : kOk;
  }
};

// ---------------------------------------------------------------- play

struct PlayCmd {
  FormulaArg formula;
  ModelArg model;
  std::string as = "eloise";
  std::optional<unsigned> clock;
  std::size_t max_steps = 1000;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("play", "play the evaluation game interactively");
    formula.add(c);
    model.add(c, true);
    c->add_option("--as", as)->check(CLI::IsMember({"eloise", "abelard", "spectate"}));
    c->add_option("--clock", clock, "play the clocked game G_N");
    c->add_option("--max-steps", max_steps, "stop after this many moves");
  }

  int run(Output& o, std::istream& in) const {
    const Structure m = model.structure();
    const Assignment s = model.assignment();
    const Formula f = formula.get(&m.vocabulary());
    check_suitable(m, s, f);
    SessionMode mode;
    mode.eloise = as == "eloise" ? Controller::Human : Controller::Engine;
    mode.abelard = as == "abelard" ? Controller::Human : Controller::Engine;
    GameSession g(m, s, f, mode, clock);
    auto show = [&](const char* who) {
      const int p = g.current_position();
      o.line(std::string(who) + " " + std::to_string(p) + " " + g.describe(p));
      o.record({{"event", who}, {"position", p}, {"description", g.describe(p)}});
    };
    show("position");
    std::size_t steps = 0;
    while (g.outcome() == Outcome::Ongoing) {
      if (steps >= max_steps) {
        o.line("step limit reached");
        o.record({{"event", "limit"}, {"steps", steps}});
        return kOk;
      }
      if (g.engine_to_move()) {
        g.engine_move();
        ++steps;
        show("engine");
        continue;
      }
      const auto moves = g.legal_moves();
      const char* player = *g.to_move() == Player::Eloise ? "Eloise" : "Abelard";
      o.line(std::string(player) + " to move:");
      json opts = json::array();
      for (std::size_t i = 0; i < moves.size(); ++i) {
        o.line("  [" + std::to_string(i) + "] " + g.describe(moves[i]));
        opts.push_back(g.describe(moves[i]));
      }
      o.record({{"event", "moves"}, {"player", player}, {"moves", opts}});
      if (!o.json_mode()) o.raw() << "> " << std::flush;
      std::string cmd;
      if (!std::getline(in, cmd)) {
        o.line("");
        return kOk;
      }
      cmd.erase(0, cmd.find_first_not_of(" \t"));
      cmd.erase(cmd.find_last_not_of(" \t\r") + 1);
      if (cmd == "quit" || cmd == "q") return kOk;
      if (cmd == "hint") {
        auto h = g.hint();
        o.line("hint: " + (h ? std::to_string(*h) : std::string("-")));
        o.record({{"event", "hint"}, {"move", h ? json(*h) : json(nullptr)}});
        continue;
      }
      try {
        std::size_t used = 0;
        unsigned long idx = std::stoul(cmd, &used);
        if (used != cmd.size()) throw std::invalid_argument("trailing input");
        g.apply_move(idx);
      } catch (const std::logic_error&) {
        o.line("illegal move '" + cmd + "' (enter an index, hint or quit)");
        o.record({{"event", "illegal"}, {"input", cmd}});
        continue;
      } catch (const InputError& e) {
        o.line(e.what());
        o.record({{"event", "illegal"}, {"input", cmd}});
        continue;
      }
      ++steps;
      show("position");
    }
    o.line(std::string("outcome ") + outcome_name(g.outcome()));
    o.record({{"event", "outcome"}, {"outcome", outcome_name(g.outcome())}});
    return kOk;
  }
};

// ---------------------------------------------------------------- approx / unfold

struct ApproxCmd {
  FormulaArg formula;
  ModelArg model;
  unsigned n = 0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("approx", "print the n-th approximant");
    formula.add(c);
    model.add(c, false);
    c->add_option("--n", n, "approximant index")->required();
  }

  int run(Output& o) const {
    std::optional<Structure> m;
    Assignment s;
    if (model.present()) {
      m = model.structure();
      s = model.assignment();
    }
    const Formula f = formula.get(m ? &m->vocabulary() : nullptr);
    const ApproximantReport r = approximant_report(f, n, m ? &*m : nullptr, &s);
    o.line(print_formula(r.approximant));
    if (r.truth) o.line(std::string("truth=") + (*r.truth ? "true" : "false"));
    json j{{"command", "approx"}, {"n", n}, {"unfolding_size", r.unfolding_size},
           {"approximant", print_formula(r.approximant)}};
    j["truth"] = r.truth ? json(*r.truth) : json(nullptr);
    o.record(j);
    return kOk;
  }
};

struct UnfoldCmd {
  FormulaArg formula;
  unsigned n = 0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("unfold", "print the n-th unfolding");
    formula.add(c);
    c->add_option("--n", n, "unfolding index")->required();
  }

  int run(Output& o) const {
    const Formula psi = unfold(formula.get(), n);
    o.line(print_formula(psi));
    o.record({{"command", "unfold"}, {"n", n}, {"size", psi.size()}, {"unfolding", print_formula(psi)}});
    return kOk;
  }
};

// ---------------------------------------------------------------- nnf / regularize

struct NnfCmd {
  FormulaArg formula;
  bool weak = false;
  bool trace = false;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("nnf", "negation normal form");
    formula.add(c);
    c->add_flag("--weak", weak, "stop at weak NNF (dualities only)");
    c->add_flag("--trace", trace, "print the rewrite steps as a derivation");
  }

  int run(Output& o) const {
    const Formula f = formula.get();
    std::vector<Rewrite> steps;
    Formula result;
    std::size_t rounds = 0;
    if (weak) {
      result = to_weak_nnf(f, &steps);
    } else {
      NnfResult r = to_strong_nnf(f);
      result = r.result;
      steps = std::move(r.trace);
      rounds = r.rounds;
    }
    o.line(print_formula(result));
    json j{{"command", "nnf"}, {"result", print_formula(result)}, {"steps", steps.size()}, {"rounds", rounds}};
    if (trace) {
      const std::string d = print_derivation(derivation_from_rewrites(f, steps));
      if (!o.json_mode()) o.raw() << d;
      j["derivation"] = d;
    }
    o.record(j);
    return kOk;
  }
};

struct RegularizeCmd {
  FormulaArg formula;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("regularize", "rename labels into a regular formula");
    formula.add(c);
  }

  int run(Output& o) const {
    const Formula r = regularize(formula.get());
    o.line(print_formula(r));
    o.record({{"command", "regularize"}, {"result", print_formula(r)}});
    return kOk;
  }
};

// ---------------------------------------------------------------- proofs

struct ProveCheckCmd {
  std::string file;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("prove-check", "check a derivation file");
    c->add_option("file", file, "derivation file")->required();
  }

  int run(Output& o) const {
    const Derivation d = parse_derivation(read_file(file));
    const CheckResult r = check_derivation(d);
    if (r.error) {
      o.line("error at step " + r.error->step_id + ": " + r.error->code + ": " + r.error->message);
      o.record({{"command", "prove-check"}, {"ok", false}, {"step", r.error->step_id}, {"code", r.error->code},
                {"message", r.error->message}});
      return kMismatch;
    }
    o.line("ok");
    json prem = json::array();
    for (const auto& p : r.premises) {
      o.line("premise: " + print_formula(p));
      prem.push_back(print_formula(p));
    }
    if (r.conclusion) o.line("conclusion: " + print_formula(*r.conclusion));
    o.record({{"command", "prove-check"}, {"ok", true}, {"premises", prem},
              {"conclusion", r.conclusion ? json(print_formula(*r.conclusion)) : json(nullptr)}});
    return kOk;
  }
};

struct ProveBuildCmd {
  std::string kind;
  FormulaArg formula;
  unsigned n = 0;
  std::string direction = "forward";

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("prove-build", "build a derivation (nnf or approximant)");
    c->add_option("kind", kind)->required()->check(CLI::IsMember({"nnf", "approximant"}));
    formula.add(c);
    c->add_option("--n", n, "approximant index");
    c->add_option("--direction", direction, "nnf: forward (f |- f*) or backward (f* |- f)")
        ->check(CLI::IsMember({"forward", "backward"}));
  }

  int run(Output& o) const {
    const Formula f = formula.get();
    Derivation d;
    if (kind == "nnf") {
      auto [fwd, back] = build_nnf_derivation(f);
      d = direction == "forward" ? std::move(fwd) : std::move(back);
    } else {
      d = build_approximant_derivation(f, n);
    }
    const std::string text = print_derivation(d);
    if (!o.json_mode()) o.raw() << text;
    o.record({{"command", "prove-build"}, {"kind", kind}, {"steps", d.steps.size()}, {"derivation", text}});
    return kOk;
  }
};

// ---------------------------------------------------------------- translate

struct TranslateCmd {
  FormulaArg formula;
  bool safety = false;
  bool tptp = false;
  std::string name = "f1";
  std::string role = "axiom";

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("translate", "safety theory and TPTP export");
    formula.add(c);
    c->add_flag("--safety", safety, "emit the safety theory");
    c->add_flag("--tptp", tptp, "emit TPTP FOF");
    c->add_option("--name", name, "TPTP unit name");
    c->add_option("--role", role, "TPTP role")->check(CLI::IsMember({"axiom", "conjecture", "hypothesis"}));
  }

  int run(Output& o) const {
    if (!safety && !tptp) throw CLI::ValidationError("translate", "give --safety and/or --tptp");
    const Formula f = formula.get();
    json j{{"command", "translate"}};
    if (!safety) {
      const std::string unit = export_tptp(name, role, f);
      o.line(unit);
      j["tptp"] = json::array({unit});
      o.record(j);
      return kOk;
    }
    const SafetyTheory t = safety_theory(f);
    json axioms = json::array();
    if (tptp) {
      for (const auto& a : t.axioms) axioms.push_back(export_tptp(a.name, "axiom", a.formula));
      axioms.push_back(export_tptp("root", "axiom", t.root));
      for (const auto& u : axioms) o.line(u.get<std::string>());
      j["tptp"] = axioms;
    } else {
      o.line("predicates=" + std::to_string(t.predicates.size()) + " arity=" + std::to_string(t.variables.size()));
      for (const auto& a : t.axioms) {
        o.line(a.name + ": " + print_formula(a.formula));
        axioms.push_back({{"name", a.name}, {"formula", print_formula(a.formula)}});
      }
      o.line("root: " + print_formula(t.root));
      o.line("second_order: " + t.second_order);
      j["axioms"] = axioms;
      j["root"] = print_formula(t.root);
      j["second_order"] = t.second_order;
      j["predicates"] = t.predicates;
    }
    o.record(j);
    return kOk;
  }
};

// ---------------------------------------------------------------- searches

struct SatSearchCmd {
  FormulaArg formula;
  unsigned max_n = 3;
  std::size_t max_domain = 3;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("sat-search", "search for a finite model of an approximant");
    formula.add(c);
    c->add_option("--max-n", max_n);
    c->add_option("--max-domain", max_domain);
  }

  int run(Output& o) const {
    const auto w = sat_search(formula.get(), max_n, max_domain);
    json j{{"command", "sat-search"}};
    if (!w) {
      o.line("exhausted");
      j["result"] = "exhausted";
    } else {
      o.line("witness n=" + std::to_string(w->n));
      o.line("assignment={" + print_assignment(w->assignment) + "}");
      if (!o.json_mode()) o.raw() << print_structure(w->model);
      j["result"] = "witness";
      j["n"] = w->n;
      j["assignment"] = assignment_json(w->assignment);
      j["model"] = structure_json(w->model);
    }
    o.record(j);
    return kOk;
  }
};

struct ValidSearchCmd {
  FormulaArg formula;
  unsigned max_n = 3;
  std::size_t max_domain = 3;
  std::string prover_cmd;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("valid-search", "prove or refute validity");
    formula.add(c);
    c->add_option("--max-n", max_n);
    c->add_option("--max-domain", max_domain);
    c->add_option("--prover-cmd", prover_cmd, "external prover command template ({} = problem file)");
  }

  int run(Output& o) const {
    const Formula f = formula.get();
    auto prover = make_prover(prover_cmd.empty() ? std::nullopt : std::optional<std::string>(prover_cmd));
    const ValidityResult r = validity_search(f, max_n, *prover, max_domain);
    json j{{"command", "valid-search"}, {"result", validity_status_name(r.status)}};
    switch (r.status) {
      case ValidityResult::Status::Proved:
        o.line("proved n=" + std::to_string(r.n) + " prover=" + r.prover);
        j["n"] = r.n;
        j["prover"] = r.prover;
        break;
      case ValidityResult::Status::Refuted:
        o.line(std::string("refuted verdict=") + verdict_name(r.verdict));
        o.line("assignment={" + print_assignment(*r.assignment) + "}");
        if (!o.json_mode()) o.raw() << print_structure(*r.model);
        j["verdict"] = verdict_name(r.verdict);
        j["assignment"] = assignment_json(*r.assignment);
        j["model"] = structure_json(*r.model);
        break;
      case ValidityResult::Status::Unknown:
        o.line("unknown");
        break;
    }
    o.record(j);
    return kOk;
  }
};

// ---------------------------------------------------------------- enumerate-test

struct EnumerateTestCmd {
  std::size_t max_domain = 2;
  unsigned max_n = 3;
  std::size_t random = 10;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("enumerate-test", "run the internal property suites on the built-in corpus");
    c->add_option("--max-domain", max_domain);
    c->add_option("--max-n", max_n);
    c->add_option("--random", random, "number of random formulas added to the corpus");
  }

  using Check = std::function<bool(const Formula&, const Structure&, const Assignment&)>;

  int run(Output& o) const {
    std::vector<Formula> corpus;
    for (const auto& e : named_corpus()) {
      Formula f = parse_formula(e.text);
      if (structure_count(vocabulary_of(f), max_domain) <= 4096) corpus.push_back(f);
    }
    for (const auto& f : random_corpus(random)) corpus.push_back(f);

    auto suite = [&](const std::string& name, const Check& check) {
      std::size_t checks = 0, failures = 0;
      for (const auto& f : corpus) {
        const auto fv = free_variables(f);
        const std::vector<Variable> vars(fv.begin(), fv.end());
        for (const auto& m : enumerate_structures(vocabulary_of(f), max_domain))
          for (const auto& s : all_assignments(vars, m.domain_size())) {
            ++checks;
            if (!check(f, m, s)) ++failures;
          }
      }
      o.line(name + ": " + (failures ? "FAIL" : "PASS") + " (" + std::to_string(checks) + " checks, " +
             std::to_string(failures) + " failures)");
      o.record({{"suite", name}, {"pass", failures == 0}, {"checks", checks}, {"failures", failures}});
      return failures == 0;
    };

    bool ok = true;
    ok &= suite("conservativity", [](const Formula& f, const Structure& m, const Assignment& s) {
      if (!is_pure_fo(f)) return true;
      const Verdict v = verdict_unbounded(m, s, f);
      return v == (tarski_eval(m, s, f) ? Verdict::EloiseWins : Verdict::AbelardWins);
    });
    ok &= suite("negation-duality", [](const Formula& f, const Structure& m, const Assignment& s) {
      const Verdict a = verdict_unbounded(m, s, f);
      const Verdict b = verdict_unbounded(m, s, Formula::negation(f));
      return (a == Verdict::EloiseWins) == (b == Verdict::AbelardWins) &&
             (a == Verdict::AbelardWins) == (b == Verdict::EloiseWins);
    });
    ok &= suite("approximant-equivalence", [&](const Formula& f, const Structure& m, const Assignment& s) {
      ClockedSolver cs(m, s, f);
      const auto vs = cs.sweep(max_n);
      for (unsigned n = 0; n <= max_n; ++n)
        if (eval_via_approximant(m, s, f, n) != (vs[n] == Verdict::EloiseWins)) return false;
      return true;
    });
    ok &= suite("clock-monotonicity", [&](const Formula& f, const Structure& m, const Assignment& s) {
      ClockedSolver cs(m, s, f);
      const auto vs = cs.sweep(max_n + 2);
      for (std::size_t n = 0; n + 1 < vs.size(); ++n)
        if (vs[n] != Verdict::Undetermined && vs[n + 1] != vs[n]) return false;
      return true;
    });
    ok &= suite("bounded-unbounded", [](const Formula& f, const Structure& m, const Assignment& s) {
      return verdict_bounded(m, s, f) == verdict_unbounded(m, s, f);
    });
    ok &= suite("regularize", [](const Formula& f, const Structure& m, const Assignment& s) {
      const Formula r = regularize(f);
      return is_regular(r) && verdict_unbounded(m, s, r) == verdict_unbounded(m, s, f);
    });
    ok &= suite("strong-nnf", [](const Formula& f, const Structure& m, const Assignment& s) {
      const Formula g = to_strong_nnf(f).result;
      return is_strong_nnf(g) && verdict_unbounded(m, s, g) == verdict_unbounded(m, s, f);
    });
    ok &= suite("safety", [](const Formula& f, const Structure& m, const Assignment& s) {
      if (!free_variables(f).empty() || safety_bits(safety_theory(f), m.domain_size()) > kSafetyBitCap) return true;
      return verify_safety_small(f, m, s) == (verdict_unbounded(m, s, f) != Verdict::EloiseWins);
    });
    return ok ? kOk : kMismatch;
  }
};

int map_error(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Syntax:
    case ErrorKind::Input:
    case ErrorKind::Rule:
      return kInput;
    case ErrorKind::Budget:
      return kBudget;
    case ErrorKind::Prover:
      return kProver;
  }
  return kInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"loopfo: first-order logic with labels and claims over finite structures", "loopfo"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json-lines"}));

  CheckCmd check;
  PlayCmd play;
  ApproxCmd approx;
  UnfoldCmd unfold_cmd;
  NnfCmd nnf;
  RegularizeCmd reg;
  ProveCheckCmd pcheck;
  ProveBuildCmd pbuild;
  TranslateCmd translate;
  SatSearchCmd sat;
  ValidSearchCmd valid;
  EnumerateTestCmd etest;
  check.add(app);
  play.add(app);
  approx.add(app);
  unfold_cmd.add(app);
  nnf.add(app);
  reg.add(app);
  pcheck.add(app);
  pbuild.add(app);
  translate.add(app);
  sat.add(app);
  valid.add(app);
  etest.add(app);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Output o(out, format == "json-lines");
  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "check") return check.run(o);
    if (cmd == "play") return play.run(o, in);
    if (cmd == "approx") return approx.run(o);
    if (cmd == "unfold") return unfold_cmd.run(o);
    if (cmd == "nnf") return nnf.run(o);
    if (cmd == "regularize") return reg.run(o);
    if (cmd == "prove-check") return pcheck.run(o);
    if (cmd == "prove-build") return pbuild.run(o);
    if (cmd == "translate") return translate.run(o);
    if (cmd == "sat-search") return sat.run(o);
    if (cmd == "valid-search") return valid.run(o);
    if (cmd == "enumerate-test") return etest.run(o);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return map_error(e);
  }
  return kUsage;
}

}  // namespace loopfo::cli
