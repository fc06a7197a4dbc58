#pragma once

#include "farl/core/game.hpp"

namespace farl::games {

// 3x3 TicTacToe. Cells: 0 empty, 1 first player (X), 2 second player
// (O). Actions are cell indices, row-major. Win 1, loss 0, draw 0.5.
class TicTacToe : public Game {
 public:
  TicTacToe();

  GameState initial_state(Rng& rng) const override;
  void legal_actions(const GameState& s, std::vector<ActionId>& out) const override;
  GameState compute_afterstate(const GameState& s, ActionId a) const override;
  std::string render_line(const GameState& s) const override;
  std::string render(const GameState& s) const override;
  std::string action_name(ActionId a) const override;
};

}  // namespace farl::games
