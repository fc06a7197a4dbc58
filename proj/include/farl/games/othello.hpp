#pragma once

#include "farl/core/game.hpp"

namespace farl::games {

// Othello 8x8. Cells row-major: 0 empty, 1 black (first player),
// 2 white. Actions are cell indices of the placed disc; passing is
// handled inside the transition: if the opponent has no reply the move
// stays with the placer, and if neither side can move the game ends.
// Majority of discs wins (1 / 0, draw 0.5 each).
class Othello : public Game {
 public:
  Othello();

  GameState initial_state(Rng& rng) const override;
  void legal_actions(const GameState& s, std::vector<ActionId>& out) const override;
  GameState compute_afterstate(const GameState& s, ActionId a) const override;
  std::string render_line(const GameState& s) const override;
  std::string render(const GameState& s) const override;
  std::string action_name(ActionId a) const override;

  static bool any_move(const GameState& s, int player);
};

}  // namespace farl::games
