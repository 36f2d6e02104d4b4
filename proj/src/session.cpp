#include "loopfo/session.hpp"

#include <algorithm>

#include "loopfo/error.hpp"
#include "loopfo/syntax.hpp"

namespace loopfo {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Ongoing: return "ongoing";
    case Outcome::EloiseWon: return "EloiseTerminal";
    case Outcome::AbelardWon: return "AbelardTerminal";
    case Outcome::Draw: return "DrawTerminal";
  }
  return "?";
}

GameSession::GameSession(const Structure& m, const Assignment& s, const Formula& f, SessionMode mode,
                         std::optional<unsigned> clock)
    : arena_(build_arena(m, s, f, clock)), solution_(solve_reachability(arena_)), mode_(mode), current_(0) {
  history_.push_back(current_);
}

std::vector<int> GameSession::legal_moves() const { return arena_.successors(current_); }

std::optional<Player> GameSession::to_move() const {
  Owner o = arena_.owner(current_);
  if (o == Owner::Eloise) return Player::Eloise;
  if (o == Owner::Abelard) return Player::Abelard;
  return std::nullopt;
}

bool GameSession::engine_to_move() const {
  auto p = to_move();
  if (!p) return false;
  if (arena_.successors(current_).size() == 1) return true;
  return (*p == Player::Eloise ? mode_.eloise : mode_.abelard) == Controller::Engine;
}

void GameSession::apply_move(std::size_t index) {
  const auto& succ = arena_.successors(current_);
  if (index >= succ.size()) throw InputError("illegal move index " + std::to_string(index));
  current_ = succ[index];
  history_.push_back(current_);
}

int GameSession::choose(Player p) const {
  const auto& succ = arena_.successors(current_);
  if (succ.size() == 1) return succ.front();
  int pick = -1;
  if (p == Player::Eloise && solution_.in_eloise(current_)) pick = solution_.eloise_winning[current_];
  if (p == Player::Abelard && solution_.in_abelard(current_)) pick = solution_.abelard_winning[current_];
  if (pick < 0) pick = p == Player::Eloise ? solution_.eloise_safe[current_] : solution_.abelard_safe[current_];
  return pick >= 0 ? pick : succ.front();
}

void GameSession::engine_move() {
  if (!engine_to_move()) throw InputError("no engine move at this position");
  int target = choose(*to_move());
  const auto& succ = arena_.successors(current_);
  apply_move(static_cast<std::size_t>(std::find(succ.begin(), succ.end(), target) - succ.begin()));
}

std::optional<std::size_t> GameSession::hint() const {
  auto p = to_move();
  if (!p) return std::nullopt;
  int target = choose(*p);
  const auto& succ = arena_.successors(current_);
  return static_cast<std::size_t>(std::find(succ.begin(), succ.end(), target) - succ.begin());
}

Outcome GameSession::outcome() const {
  switch (arena_.owner(current_)) {
    case Owner::EloiseTerminal: return Outcome::EloiseWon;
    case Owner::AbelardTerminal: return Outcome::AbelardWon;
    case Owner::DrawTerminal: return Outcome::Draw;
    default: return Outcome::Ongoing;
  }
}

std::string GameSession::describe(int position) const {
  const Position& p = arena_.position(position);
  std::string out = "(" + print_formula(arena_.occurrences()[p.node].formula) + ", {" +
                    print_assignment(arena_.assignment(position)) + "}, " + (p.sign == Sign::Plus ? "+" : "-");
  if (p.clock >= 0) out += ", clock " + std::to_string(p.clock);
  return out + ")";
}

}  // namespace loopfo
