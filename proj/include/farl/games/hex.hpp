#pragma once

#include "farl/core/game.hpp"

namespace farl::games {

// Hex on an n x n rhombus (default 6x6). Cells row-major: 0 empty,
// 1 first player, 2 second player. The first player connects the top
// row to the bottom row, the second player the left column to the
// right column. Actions are cell indices. Hex has no draws. Symmetry:
// 180-degree rotation, which preserves both players' goals.
class HexGame : public Game {
 public:
  explicit HexGame(int size);

  GameState initial_state(Rng& rng) const override;
  void legal_actions(const GameState& s, std::vector<ActionId>& out) const override;
  GameState compute_afterstate(const GameState& s, ActionId a) const override;
  std::string render_line(const GameState& s) const override;
  std::string render(const GameState& s) const override;
  std::string action_name(ActionId a) const override;

  int size() const { return spec_.hex_size; }
  // The six hex neighbours of a cell, as cell indices; used both by
  // the win check and by random-walk n-tuple generation.
  void neighbours(int cell, std::vector<int>& out) const;

 private:
  bool connects(const GameState& s, int player) const;
};

}  // namespace farl::games
