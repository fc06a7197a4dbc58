#pragma once

#include "farl/core/game.hpp"

namespace farl::games {

// 2048 on a 4x4 board, single player. Cells hold tile exponents: 0
// empty, k = tile 2^k, capped at 15. Actions: 0 up, 1 down, 2 left,
// 3 right. The deterministic part slides and merges (each tile merges
// at most once per move, score += merged tile value); the random part
// spawns a 2 (p=0.9) or 4 (p=0.1) on a uniformly chosen empty cell.
// The game ends when the spawned position has no legal move. Episode
// score = cumulative merged-tile sum.
class Game2048 : public Game {
 public:
  static constexpr int kUp = 0, kDown = 1, kLeft = 2, kRight = 3;

  Game2048();

  bool stochastic() const override { return true; }
  GameState initial_state(Rng& rng) const override;
  void legal_actions(const GameState& s, std::vector<ActionId>& out) const override;
  GameState compute_afterstate(const GameState& s, ActionId a) const override;
  GameState add_random_part(const GameState& afterstate, Rng& rng) const override;

  bool reward_bounded() const override { return false; }
  double max_reward() const override;

  std::string render_line(const GameState& s) const override;
  std::string render(const GameState& s) const override;
  std::string action_name(ActionId a) const override;

  static bool slides(const GameState& s, int dir);
  static int count_empty(const GameState& s);
};

}  // namespace farl::games
