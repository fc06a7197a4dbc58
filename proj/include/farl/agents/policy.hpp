#pragma once

#include <vector>

#include "farl/agents/params.hpp"
#include "farl/core/game.hpp"
#include "farl/ntuple/network.hpp"

namespace farl::agents {

struct Chosen {
  ActionId action;
  bool was_random = false;
};

// scratch buffers reused across selections
struct PolicyWork {
  std::vector<ActionId> actions;
  SymmetrySet orbit;
  std::vector<int> ties;
};

// Map a reward into the training target scale. Identity unless
// normalize is set, in which case the game's reward interval maps
// linearly onto [0,1]; unbounded games reject normalization.
double normalize_reward(const Game& g, bool normalize, double r);

// Epsilon-greedy over afterstate values: with probability epsilon a
// uniform random legal action, otherwise the action whose afterstate
// maximizes delta reward plus gamma * V(afterstate). Ties break
// uniformly; the random stream is only consumed when needed, so a
// tie-free greedy pass draws nothing.
Chosen choose_action_td(const Game& g, const ntuple::NTupleNetwork& net, const GameState& s,
                        double epsilon, double gamma, bool use_symmetry, bool normalize, Rng& rng,
                        PolicyWork& work);

// Same selection over Q(s,a) outputs.
Chosen choose_action_q(const Game& g, const ntuple::NTupleNetwork& net, const GameState& s,
                       double epsilon, double gamma, bool use_symmetry, bool normalize, Rng& rng,
                       PolicyWork& work);

// Frozen greedy agent (epsilon = 0) for evaluation and play.
class NetGreedyPolicy : public MovePolicy {
 public:
  NetGreedyPolicy(const ntuple::NTupleNetwork& net, double gamma, bool use_symmetry,
                  std::string label = "agent")
      : net_(net), gamma_(gamma), use_symmetry_(use_symmetry), label_(std::move(label)) {}

  ActionId select(const Game& game, const GameState& s, Rng& rng) override {
    if (net_.mode() == ntuple::NetMode::value_net)
      return choose_action_td(game, net_, s, 0.0, gamma_, use_symmetry_, false, rng, work_).action;
    return choose_action_q(game, net_, s, 0.0, gamma_, use_symmetry_, false, rng, work_).action;
  }
  std::string name() const override { return label_; }

 private:
  const ntuple::NTupleNetwork& net_;
  double gamma_;
  bool use_symmetry_;
  std::string label_;
  PolicyWork work_;
};

}  // namespace farl::agents
