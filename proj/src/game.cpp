#include "loopfo/game.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "loopfo/error.hpp"
#include "loopfo/syntax.hpp"

namespace loopfo {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::EloiseWins: return "EloiseWins";
    case Verdict::AbelardWins: return "AbelardWins";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(const std::string& s) {
  if (s == "EloiseWins") return Verdict::EloiseWins;
  if (s == "AbelardWins") return Verdict::AbelardWins;
  if (s == "Undetermined") return Verdict::Undetermined;
  return std::nullopt;
}

const char* owner_name(Owner o) {
  switch (o) {
    case Owner::Eloise: return "Eloise";
    case Owner::Abelard: return "Abelard";
    case Owner::EloiseTerminal: return "EloiseTerminal";
    case Owner::AbelardTerminal: return "AbelardTerminal";
    case Owner::DrawTerminal: return "DrawTerminal";
  }
  return "?";
}

Assignment Arena::assignment(int id) const {
  const Position& p = positions_[id];
  const auto& readable = (*occ_)[p.node].readable;
  Assignment s;
  for (std::size_t i = 0; i < readable.size(); ++i) s[occ_->variables()[readable[i]]] = p.values[i];
  return s;
}

int Arena::add(Position p, Owner o) {
  positions_.push_back(std::move(p));
  owner_.push_back(o);
  succ_.emplace_back();
  return static_cast<int>(positions_.size()) - 1;
}

namespace {

// Who moves at a connective or quantifier for the given sign.
Player mover(Kind k, Sign s) {
  bool plus = s == Sign::Plus;
  switch (k) {
    case Kind::And:
    case Kind::Forall: return plus ? Player::Abelard : Player::Eloise;
    case Kind::Or:
    case Kind::Exists: return plus ? Player::Eloise : Player::Abelard;
    default: return Player::Eloise;
  }
}

bool atom_true(const Occurrence& o, const std::vector<Element>& env, const Structure& m) {
  const Formula& f = o.formula;
  if (f.is(Kind::Equal)) return env[o.args[0]] == env[o.args[1]];
  Tuple t;
  for (int a : o.args) t.push_back(env[a]);
  return m.holds(f.predicate(), t);
}

Owner terminal_owner(bool truth, Sign s) {
  return truth == (s == Sign::Plus) ? Owner::EloiseTerminal : Owner::AbelardTerminal;
}

Owner classify(const Occurrence& o, Sign s, int clock, bool clocked, const std::vector<Element>& env,
               const Structure& m) {
  switch (o.formula.kind()) {
    case Kind::Falsum: return terminal_owner(false, s);
    case Kind::Atom:
    case Kind::Equal: return terminal_owner(atom_true(o, env, m), s);
    case Kind::Claim:
      if (o.reference < 0) return Owner::DrawTerminal;
      if (clocked && clock == 0) return Owner::DrawTerminal;
      return Owner::Eloise;
    case Kind::Not:
    case Kind::Label: return Owner::Eloise;
    default: return mover(o.formula.kind(), s) == Player::Eloise ? Owner::Eloise : Owner::Abelard;
  }
}

std::vector<Element> project(const Occurrence& o, const std::vector<Element>& env) {
  std::vector<Element> v;
  v.reserve(o.readable.size());
  for (int x : o.readable) v.push_back(env[x]);
  return v;
}

}  // namespace

Arena build_arena(const Structure& m, const Assignment& s, const Formula& f, std::optional<unsigned> clock) {
  check_suitable(m, s, f);
  auto occ = std::make_shared<const Occurrences>(f);
  const Occurrences& oc = *occ;
  const std::size_t n = m.domain_size();
  const bool clocked = clock.has_value();
  Arena a(occ, n, clocked);

  std::unordered_map<std::string, int> index;
  auto key_of = [&](const Position& p) {
    std::string k;
    k.reserve(16 + p.values.size() * 4);
    k.append(reinterpret_cast<const char*>(&p.node), sizeof p.node);
    k.push_back(static_cast<char>(p.sign));
    k.append(reinterpret_cast<const char*>(&p.clock), sizeof p.clock);
    for (auto v : p.values) k.append(reinterpret_cast<const char*>(&v), sizeof v);
    return k;
  };
  std::vector<Element> env(oc.variables().size(), 0);
  auto load = [&](const Position& p) {
    const auto& rd = oc[p.node].readable;
    for (std::size_t i = 0; i < rd.size(); ++i) env[rd[i]] = p.values[i];
  };
  auto intern = [&](Position p) {
    std::string k = key_of(p);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    std::vector<Element> saved = env;
    load(p);
    Owner o = classify(oc[p.node], p.sign, p.clock, clocked, env, m);
    env = saved;
    int id = a.add(std::move(p), o);
    index.emplace(std::move(k), id);
    return id;
  };

  Position init;
  init.node = 0;
  init.sign = Sign::Plus;
  init.clock = clocked ? static_cast<int>(*clock) : -1;
  for (int x : oc[0].readable) {
    auto it = s.find(oc.variables()[x]);
    if (it == s.end()) throw InputError("assignment does not cover variable '" + oc.variables()[x] + "'");
    init.values.push_back(it->second);
  }
  intern(init);

  for (std::size_t id = 0; id < a.size(); ++id) {
    int pid = static_cast<int>(id);
    if (is_terminal(a.owner(pid))) continue;
    Position p = a.position(pid);
    const Occurrence& o = oc[p.node];
    load(p);
    std::vector<int> succ;
    auto push = [&](int node, Sign sg, int clk) {
      Position q;
      q.node = node;
      q.sign = sg;
      q.clock = clk;
      q.values = project(oc[node], env);
      int qid = intern(std::move(q));
      if (std::find(succ.begin(), succ.end(), qid) == succ.end()) succ.push_back(qid);
    };
    switch (o.formula.kind()) {
      case Kind::Not: push(o.children[0], flip(p.sign), p.clock); break;
      case Kind::Label: push(o.children[0], p.sign, p.clock); break;
      case Kind::Claim: push(o.reference, p.sign, clocked ? p.clock - 1 : -1); break;
      case Kind::And:
      case Kind::Or:
        push(o.children[0], p.sign, p.clock);
        push(o.children[1], p.sign, p.clock);
        break;
      case Kind::Exists:
      case Kind::Forall:
        for (Element e = 0; e < n; ++e) {
          env[o.bound_var] = e;
          push(o.children[0], p.sign, p.clock);
        }
        break;
      default: break;
    }
    a.successors_mut(pid) = std::move(succ);
  }
  return a;
}

Solution solve_reachability(const Arena& a) {
  const int N = static_cast<int>(a.size());
  std::vector<std::vector<int>> pred(N);
  for (int v = 0; v < N; ++v)
    for (int w : a.successors(v)) pred[w].push_back(v);

  Solution sol;
  sol.region.assign(N, 0);
  sol.eloise_winning.assign(N, -1);
  sol.abelard_winning.assign(N, -1);

  auto attract = [&](Player who, std::uint8_t mark, Strategy& strat) {
    Owner own = who == Player::Eloise ? Owner::Eloise : Owner::Abelard;
    Owner goal = who == Player::Eloise ? Owner::EloiseTerminal : Owner::AbelardTerminal;
    std::vector<int> remaining(N);
    std::deque<int> queue;
    for (int v = 0; v < N; ++v) {
      remaining[v] = static_cast<int>(a.successors(v).size());
      if (a.owner(v) == goal) {
        sol.region[v] = mark;
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      int w = queue.front();
      queue.pop_front();
      for (int u : pred[w]) {
        if (sol.region[u] == mark) continue;
        bool controlled = a.owner(u) == own || a.successors(u).size() == 1;
        if (controlled) {
          sol.region[u] = mark;
          strat[u] = w;
          queue.push_back(u);
        } else if (--remaining[u] == 0) {
          sol.region[u] = mark;
          strat[u] = a.successors(u).front();
          queue.push_back(u);
        }
      }
    }
  };
  attract(Player::Eloise, 1, sol.eloise_winning);
  attract(Player::Abelard, 2, sol.abelard_winning);

  auto safe = [&](Player who, std::uint8_t self, std::uint8_t enemy, const Strategy& winning) {
    Owner own = who == Player::Eloise ? Owner::Eloise : Owner::Abelard;
    Strategy out(N, -1);
    for (int v = 0; v < N; ++v) {
      if (a.owner(v) != own) continue;
      if (sol.region[v] == self) {
        out[v] = winning[v];
        continue;
      }
      for (int w : a.successors(v))
        if (sol.region[w] != enemy) {
          out[v] = w;
          break;
        }
      if (out[v] < 0 && !a.successors(v).empty()) out[v] = a.successors(v).front();
    }
    return out;
  };
  sol.eloise_safe = safe(Player::Eloise, 1, 2, sol.eloise_winning);
  sol.abelard_safe = safe(Player::Abelard, 2, 1, sol.abelard_winning);
  return sol;
}

Verdict verdict_at(const Solution& sol, int position) {
  if (sol.in_eloise(position)) return Verdict::EloiseWins;
  if (sol.in_abelard(position)) return Verdict::AbelardWins;
  return Verdict::Undetermined;
}

VerdictReport solve_unbounded(const Structure& m, const Assignment& s, const Formula& f) {
  Arena a = build_arena(m, s, f);
  Solution sol = solve_reachability(a);
  VerdictReport r;
  r.verdict = verdict_at(sol, a.initial());
  r.positions = a.size();
  if (r.verdict == Verdict::EloiseWins) r.strategy = sol.eloise_winning;
  if (r.verdict == Verdict::AbelardWins) r.strategy = sol.abelard_winning;
  return r;
}

Verdict verdict_unbounded(const Structure& m, const Assignment& s, const Formula& f) {
  return solve_unbounded(m, s, f).verdict;
}

Verdict verdict_bounded(const Structure& m, const Assignment& s, const Formula& f) {
  // On finite structures the bounded and unbounded games have the same
  // winner; the test suite re-checks this against the clocked solver.
  return verdict_unbounded(m, s, f);
}

Verdict verdict_clocked(const Structure& m, const Assignment& s, const Formula& f, unsigned n) {
  ClockedSolver cs(m, s, f);
  return cs.sweep(n).back();
}

std::optional<unsigned> minimal_clock(const Structure& m, const Assignment& s, const Formula& f) {
  VerdictReport r = solve_unbounded(m, s, f);
  if (r.verdict == Verdict::Undetermined) return std::nullopt;
  ClockedSolver cs(m, s, f);
  for (;;) {
    if (cs.current() == r.verdict) return cs.level();
    if (!cs.advance() || cs.level() > r.positions + 1)
      throw std::logic_error("clocked verdicts stabilised without reaching the unbounded winner");
  }
}

ClockedSolver::ClockedSolver(const Structure& m, const Assignment& s, const Formula& f)
    : n_(m.domain_size()), occ_(f) {
  check_suitable(m, s, f);
  std::size_t maxk = occ_.variables().size();
  pow_.assign(maxk + 1, 1);
  for (std::size_t i = 1; i <= maxk; ++i) pow_[i] = pow_[i - 1] * n_;
  std::map<std::string, int> pred_ids;
  for (std::size_t k = 0; k < occ_.size(); ++k) {
    const Occurrence& o = occ_[k];
    offset_.push_back(total_);
    count_.push_back(pow_[o.readable.size()]);
    total_ += count_.back();
    int pid = -1;
    if (o.formula.is(Kind::Atom)) {
      auto [it, inserted] = pred_ids.emplace(o.formula.predicate(), static_cast<int>(tables_.size()));
      if (inserted) tables_.push_back(m.table(o.formula.predicate()));
      pid = it->second;
    }
    pred_.push_back(pid);
  }
  if (total_ > (std::size_t{1} << 28)) throw BudgetError("clocked game too large");
  std::vector<Element> env(maxk, 0);
  for (int x : occ_[0].readable) env[x] = s.at(occ_.variables()[x]);
  root_code_ = code_of(0, env);
  compute(nullptr, values_);
}

std::size_t ClockedSolver::code_of(int node, const std::vector<Element>& env) const {
  const auto& rd = occ_[node].readable;
  std::size_t c = 0;
  for (std::size_t i = 0; i < rd.size(); ++i) c += env[rd[i]] * pow_[i];
  return c;
}

void ClockedSolver::compute(const std::vector<std::uint8_t>* prev, std::vector<std::uint8_t>& out) const {
  constexpr std::uint8_t A = 0, D = 1, E = 2;
  out.assign(2 * total_, D);
  std::vector<Element> env(occ_.variables().size(), 0);
  auto at = [&](int node, std::size_t code, Sign s) -> std::uint8_t {
    return out[2 * (offset_[node] + code) + (s == Sign::Minus ? 1 : 0)];
  };
  for (std::size_t kk = occ_.size(); kk-- > 0;) {
    const int k = static_cast<int>(kk);
    const Occurrence& o = occ_[k];
    const auto& rd = o.readable;
    for (std::size_t code = 0; code < count_[k]; ++code) {
      std::size_t rest = code;
      for (std::size_t i = 0; i < rd.size(); ++i) {
        env[rd[i]] = static_cast<Element>(rest % n_);
        rest /= n_;
      }
      for (int si = 0; si < 2; ++si) {
        const Sign s = si == 0 ? Sign::Plus : Sign::Minus;
        std::uint8_t v = D;
        switch (o.formula.kind()) {
          case Kind::Falsum: v = s == Sign::Plus ? A : E; break;
          case Kind::Atom:
          case Kind::Equal: {
            bool truth;
            if (o.formula.is(Kind::Equal)) {
              truth = env[o.args[0]] == env[o.args[1]];
            } else {
              std::size_t idx = 0;
              for (int a : o.args) idx = idx * n_ + env[a];
              truth = tables_[pred_[k]][idx] != 0;
            }
            v = truth == (s == Sign::Plus) ? E : A;
            break;
          }
          case Kind::Claim:
            if (o.reference >= 0 && prev)
              v = (*prev)[2 * (offset_[o.reference] + code) + static_cast<std::size_t>(si)];
            break;
          case Kind::Not: v = at(o.children[0], code_of(o.children[0], env), flip(s)); break;
          case Kind::Label: v = at(o.children[0], code_of(o.children[0], env), s); break;
          case Kind::And:
          case Kind::Or: {
            std::uint8_t l = at(o.children[0], code_of(o.children[0], env), s);
            std::uint8_t r = at(o.children[1], code_of(o.children[1], env), s);
            v = mover(o.formula.kind(), s) == Player::Eloise ? std::max(l, r) : std::min(l, r);
            break;
          }
          case Kind::Exists:
          case Kind::Forall: {
            bool eloise = mover(o.formula.kind(), s) == Player::Eloise;
            Element saved = env[o.bound_var];
            v = eloise ? A : E;
            for (Element e = 0; e < n_; ++e) {
              env[o.bound_var] = e;
              std::uint8_t c = at(o.children[0], code_of(o.children[0], env), s);
              v = eloise ? std::max(v, c) : std::min(v, c);
            }
            env[o.bound_var] = saved;
            break;
          }
        }
        out[2 * (offset_[k] + code) + static_cast<std::size_t>(si)] = v;
      }
    }
  }
}

Verdict ClockedSolver::current() const {
  std::uint8_t v = values_[2 * (offset_[0] + root_code_)];
  return v == 2 ? Verdict::EloiseWins : v == 0 ? Verdict::AbelardWins : Verdict::Undetermined;
}

bool ClockedSolver::advance() {
  std::vector<std::uint8_t> next;
  compute(&values_, next);
  ++level_;
  bool changed = next != values_;
  values_ = std::move(next);
  return changed;
}

std::vector<Verdict> ClockedSolver::sweep(unsigned max_n, bool shortcut) {
  std::vector<Verdict> out;
  out.push_back(current());
  bool stable = false;
  while (out.size() <= max_n) {
    if (!(shortcut && stable)) stable = !advance();
    out.push_back(current());
  }
  return out;
}

std::string dump_arena(const Arena& a, const Solution* sol) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int id = static_cast<int>(i);
    const Position& p = a.position(id);
    out << id << " ; " << (a.path(id).empty() ? "root" : a.path(id).str()) << " ; {" << print_assignment(a.assignment(id))
        << "} ; " << (p.sign == Sign::Plus ? '+' : '-') << " ; ";
    if (p.clock >= 0)
      out << p.clock;
    else
      out << '-';
    out << " ; " << owner_name(a.owner(id)) << " ; ";
    const auto& succ = a.successors(id);
    for (std::size_t j = 0; j < succ.size(); ++j) out << (j ? "," : "") << succ[j];
    if (succ.empty()) out << '-';
    if (sol) {
      out << " ; " << (sol->in_eloise(id) ? "E" : sol->in_abelard(id) ? "A" : "D") << " ; ";
      int choice = -1;
      if (a.owner(id) == Owner::Eloise && a.successors(id).size() > 1) choice = sol->eloise_safe[id];
      if (a.owner(id) == Owner::Abelard) choice = sol->abelard_safe[id];
      if (choice >= 0)
        out << choice;
      else
        out << '-';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace loopfo
