#pragma once

#include "farl/core/game.hpp"

namespace farl::games {

// ConnectFour on the standard 7x6 board. Cells are row-major with row
// 0 at the bottom: 0 empty, 1 first player (yellow), 2 second player
// (red), 3 the lowest empty cell of a column (the drop target). The
// reachable marker is derived from the occupancy but widens the cell
// alphabet so the value tables can tell playable threats from hanging
// ones. Actions are column indices. Symmetry group: identity and
// left-right mirror (gravity breaks the rest of the dihedral group).
class ConnectFour : public Game {
 public:
  static constexpr int kCols = 7;
  static constexpr int kRows = 6;
  static constexpr std::uint8_t kReachable = 3;

  ConnectFour();

  GameState initial_state(Rng& rng) const override;
  void legal_actions(const GameState& s, std::vector<ActionId>& out) const override;
  GameState compute_afterstate(const GameState& s, ActionId a) const override;
  std::string render_line(const GameState& s) const override;
  std::string render(const GameState& s) const override;
  std::string action_name(ActionId a) const override;
};

}  // namespace farl::games
