#pragma once

#include "farl/core/game.hpp"

namespace farl::games {

// Misere Nim with h heaps of s stones, for 2 players or the 3-player
// variant. A move takes 1..k stones from one heap; whoever takes the
// last stone loses. Board cells are the heaps themselves (alphabet
// s+1), actions encode (heap, count) as heap*s + (count-1).
//
// Terminal rewards: 2 players -> taker 0, opponent 1; 3 players ->
// taker 0.0, the player after the taker 1.0, the player before 0.2.
class Nim : public Game {
 public:
  Nim(int heaps, int stones, int players);

  GameState initial_state(Rng& rng) const override;
  void legal_actions(const GameState& s, std::vector<ActionId>& out) const override;
  GameState compute_afterstate(const GameState& s, ActionId a) const override;
  std::string render_line(const GameState& s) const override;
  std::string render(const GameState& s) const override;
  std::string action_name(ActionId a) const override;

  int heap_of(ActionId a) const { return a.value() / spec_.stones; }
  int count_of(ActionId a) const { return a.value() % spec_.stones + 1; }
};

}  // namespace farl::games
