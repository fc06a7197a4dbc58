#pragma once

#include <cstdint>

#include "farl/core/game.hpp"

namespace farl::opponents {

struct MaxNResult {
  ActionId action;
  RewardTuple value;        // expected future rewards from s, per player
  std::uint64_t nodes = 0;  // states expanded, root included
};

// Depth-limited Max-N: back up the full reward vector, each node picks
// the child maximizing the mover's component. Terminal leaves
// contribute their exact reward deltas; depth-cut leaves the all-equal
// heuristic tuple (0.5 each for 2 players, 0.4 each for 3). With depth
// at least the number of remaining moves this is perfect play.
// Children reached by different moves but identical states are
// evaluated once; ties at the root break uniformly at random over all
// maximizing actions.
MaxNResult max_n_search(const Game& game, const GameState& s, int depth, Rng& rng);

class MaxNPolicy : public MovePolicy {
 public:
  explicit MaxNPolicy(int depth) : depth_(depth) {}
  ActionId select(const Game& game, const GameState& s, Rng& rng) override {
    return max_n_search(game, s, depth_, rng).action;
  }
  std::string name() const override { return "maxn:" + std::to_string(depth_); }

 private:
  int depth_;
};

}  // namespace farl::opponents
