#pragma once

#include "farl/core/game.hpp"

namespace farl::opponents {

// Uniform over legal actions.
ActionId random_player(const Game& game, const GameState& s, Rng& rng);

class RandomPolicy : public MovePolicy {
 public:
  ActionId select(const Game& game, const GameState& s, Rng& rng) override {
    return random_player(game, s, rng);
  }
  std::string name() const override { return "random"; }
};

}  // namespace farl::opponents
