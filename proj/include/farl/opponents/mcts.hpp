#pragma once

#include <cmath>
#include <cstdint>

#include "farl/core/game.hpp"

namespace farl::opponents {

struct MctsParams {
  int iterations = 1000;
  double exploration = 1.4142135623730951;  // UCT constant, sqrt(2)
  int rollout_depth_cap = -1;               // -1: roll out to the end
};

// Standard UCT. Selection maximizes the mover's mean reward plus the
// exploration bonus, one child is expanded per iteration, rollouts are
// uniform random to the end of the episode, and every player's own
// reward is backed up along the path (max-n style for 3 players).
// Returns the most-visited root action, ties broken at random.
ActionId mcts_search(const Game& game, const GameState& s, const MctsParams& params, Rng& rng);

// Root visit counts, exposed for diagnostics and tests.
struct MctsRootStats {
  std::vector<ActionId> actions;
  std::vector<std::int64_t> visits;
  std::vector<double> mean_reward;  // mover's perspective
};
ActionId mcts_search_stats(const Game& game, const GameState& s, const MctsParams& params, Rng& rng,
                           MctsRootStats* stats);

class MctsPolicy : public MovePolicy {
 public:
  explicit MctsPolicy(MctsParams params) : params_(params) {}
  ActionId select(const Game& game, const GameState& s, Rng& rng) override {
    return mcts_search(game, s, params_, rng);
  }
  std::string name() const override { return "mcts:" + std::to_string(params_.iterations); }

 private:
  MctsParams params_;
};

}  // namespace farl::opponents
