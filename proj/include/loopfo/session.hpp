#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopfo/game.hpp"

namespace loopfo {

enum class Controller { Human, Engine };
enum class Outcome { Ongoing, EloiseWon, AbelardWon, Draw };

const char* outcome_name(Outcome o);

struct SessionMode {
  Controller eloise = Controller::Human;
  Controller abelard = Controller::Engine;
};

// Interactive play over the arena of build_arena. Engine moves follow the
// winning strategy when the engine's player is winning, otherwise a move that
// avoids the opponent's winning region when one exists.
class GameSession {
 public:
  GameSession(const Structure& m, const Assignment& s, const Formula& f, SessionMode mode,
              std::optional<unsigned> clock = {});

  int current_position() const { return current_; }
  const Arena& arena() const { return arena_; }
  const Solution& solution() const { return solution_; }
  std::vector<int> legal_moves() const;
  // Player to move at the current position; nullopt at terminals. Forced
  // moves (a single successor) are attributed to the engine.
  std::optional<Player> to_move() const;
  bool engine_to_move() const;
  void apply_move(std::size_t index);
  // Plays one engine move; requires engine_to_move().
  void engine_move();
  // Index into legal_moves() recommended for the player to move.
  std::optional<std::size_t> hint() const;
  Outcome outcome() const;
  std::string describe(int position) const;
  const std::vector<int>& history() const { return history_; }

 private:
  int choose(Player p) const;

  Arena arena_;
  Solution solution_;
  SessionMode mode_;
  int current_;
  std::vector<int> history_;
};

}  // namespace loopfo
