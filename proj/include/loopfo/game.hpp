#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loopfo/formula.hpp"
#include "loopfo/occurrences.hpp"
#include "loopfo/structure.hpp"

namespace loopfo {

enum class Sign : std::uint8_t { Plus, Minus };
enum class Player : std::uint8_t { Eloise, Abelard };
enum class Owner : std::uint8_t { Eloise, Abelard, EloiseTerminal, AbelardTerminal, DrawTerminal };
enum class Verdict : std::uint8_t { EloiseWins, AbelardWins, Undetermined };

const char* verdict_name(Verdict v);
std::optional<Verdict> parse_verdict(const std::string& s);
const char* owner_name(Owner o);
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline bool is_terminal(Owner o) { return o != Owner::Eloise && o != Owner::Abelard; }

// Positions index into Arena::positions(). `values` holds the elements of
// the readable variables of the occurrence, in Occurrence::readable order.
struct Position {
  int node = 0;
  Sign sign = Sign::Plus;
  int clock = -1;  // -1 in unclocked arenas
  std::vector<Element> values;
};

// Chosen successor (a position id) per position, -1 where unmapped.
using Strategy = std::vector<int>;

class Arena {
 public:
  Arena(std::shared_ptr<const Occurrences> occ, std::size_t domain_size, bool clocked)
      : occ_(std::move(occ)), domain_size_(domain_size), clocked_(clocked) {}

  const Occurrences& occurrences() const { return *occ_; }
  std::size_t size() const { return positions_.size(); }
  bool clocked() const { return clocked_; }
  std::size_t domain_size() const { return domain_size_; }
  int initial() const { return 0; }

  const Position& position(int id) const { return positions_[id]; }
  Owner owner(int id) const { return owner_[id]; }
  const std::vector<int>& successors(int id) const { return succ_[id]; }
  const OccPath& path(int id) const { return (*occ_)[positions_[id].node].path; }
  Assignment assignment(int id) const;

  // Used by build_arena.
  int add(Position p, Owner o);
  std::vector<int>& successors_mut(int id) { return succ_[id]; }

 private:
  std::shared_ptr<const Occurrences> occ_;
  std::size_t domain_size_;
  bool clocked_;
  std::vector<Position> positions_;
  std::vector<Owner> owner_;
  std::vector<std::vector<int>> succ_;
};

// Reachable arena of G-infinity, or of G_n when `clock` is given.
Arena build_arena(const Structure& m, const Assignment& s, const Formula& f, std::optional<unsigned> clock = {});

struct Solution {
  // 0 = neither, 1 = Eloise forces a win, 2 = Abelard forces a win.
  std::vector<std::uint8_t> region;
  Strategy eloise_winning;
  Strategy abelard_winning;
  // Strategies that avoid the opponent's region wherever that is possible.
  Strategy eloise_safe;
  Strategy abelard_safe;

  bool in_eloise(int p) const { return region[p] == 1; }
  bool in_abelard(int p) const { return region[p] == 2; }
};

Solution solve_reachability(const Arena& a);
Verdict verdict_at(const Solution& sol, int position);

struct VerdictReport {
  Verdict verdict = Verdict::Undetermined;
  Strategy strategy;  // winner's positional strategy, empty when undetermined
  std::optional<unsigned> minimal_clock;
  std::size_t positions = 0;
};

VerdictReport solve_unbounded(const Structure& m, const Assignment& s, const Formula& f);
Verdict verdict_unbounded(const Structure& m, const Assignment& s, const Formula& f);
Verdict verdict_clocked(const Structure& m, const Assignment& s, const Formula& f, unsigned n);
Verdict verdict_bounded(const Structure& m, const Assignment& s, const Formula& f);
std::optional<unsigned> minimal_clock(const Structure& m, const Assignment& s, const Formula& f);

// Level-by-level solver for the clocked games: level c is the claim-free
// acyclic game in which claims read the values of level c-1. Values are
// computed for every (occurrence, readable values, sign) triple.
class ClockedSolver {
 public:
  ClockedSolver(const Structure& m, const Assignment& s, const Formula& f);

  // Verdict of G_c at the initial position for the current level c.
  Verdict current() const;
  unsigned level() const { return level_; }
  // Advances to the next level; returns false if the values did not change
  // (every later level is then identical).
  bool advance();
  // Verdicts for n = 0..max_n. With `shortcut`, levels after a fixpoint are
  // copied instead of recomputed.
  std::vector<Verdict> sweep(unsigned max_n, bool shortcut = true);

 private:
  void compute(const std::vector<std::uint8_t>* prev, std::vector<std::uint8_t>& out) const;
  std::size_t code_of(int node, const std::vector<Element>& env) const;

  std::size_t n_;
  Occurrences occ_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> count_;
  std::vector<std::size_t> pow_;
  std::vector<int> pred_;
  std::vector<std::vector<std::uint8_t>> tables_;
  std::size_t total_ = 0;
  std::size_t root_code_ = 0;
  std::vector<std::uint8_t> values_;
  unsigned level_ = 0;
};

// One line per position: id ; path ; assignment ; sign ; clock ; owner ; successors
// followed, when a solution is given, by `; region ; strategy`.
std::string dump_arena(const Arena& a, const Solution* sol = nullptr);

}  // namespace loopfo
