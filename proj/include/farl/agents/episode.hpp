#pragma once

#include <functional>

#include "farl/agents/policy.hpp"

namespace farl::agents {

// One value-function adaptation, for test instrumentation. `player` is
// the player whose chain was adapted, `state_hash` the adapted
// (after)state at the head of his horizon.
struct UpdateEvent {
  enum class Kind : std::uint8_t {
    adapt_v = 0,       // in-episode TD target
    adapt_q = 1,       // in-episode SARSA/Q target
    final_reward = 2,  // terminal adaptation towards the player's delta reward
    final_zero = 3,    // terminal afterstate towards 0
  };
  Kind kind;
  int player;
  int move_index;
  std::uint64_t state_hash;
  double target;
  double delta;
  bool random_generated;  // current move came from the epsilon branch
};

using EventSink = std::function<void(const UpdateEvent&)>;

// Per-player last-afterstate / last-action chains with their
// eligibility horizons, plus the scratch buffers of one episode
// driver. Reused across episodes.
struct EpisodeContext {
  EpisodeContext(const Game& g, const AgentParams& params);
  void reset();

  std::vector<ntuple::EligibilityHorizon> horizon;  // one per player; head = s_last / a_last
  SymmetrySet scratch;
  PolicyWork policy;
};

struct EpisodeStats {
  int moves = 0;
  RewardTuple final_scores;  // cumulative per-player scores at the end
};

// One self-play training episode from s0. alpha and epsilon are the
// schedule values of this episode. All drivers share the network
// between the players.
EpisodeStats td_farl_episode(const Game& g, ntuple::NTupleNetwork& net, const AgentParams& params,
                             GameState s0, double alpha, double epsilon, Rng& rng,
                             EpisodeContext& ctx, const EventSink* sink = nullptr);

// Round-to-round chaining without the final adaptation of the other
// players; the terminal-to-zero step still follows the same switches.
EpisodeStats td_plain_episode(const Game& g, ntuple::NTupleNetwork& net, const AgentParams& params,
                              GameState s0, double alpha, double epsilon, Rng& rng,
                              EpisodeContext& ctx, const EventSink* sink = nullptr);

// SARSA with per-player chains; `use_farl` switches the terminal
// adaptation of the non-moving players.
EpisodeStats sarsa_episode(const Game& g, ntuple::NTupleNetwork& net, const AgentParams& params,
                           bool use_farl, GameState s0, double alpha, double epsilon, Rng& rng,
                           EpisodeContext& ctx, const EventSink* sink = nullptr);

// Q-learning: like SARSA but with the max over next actions as target.
EpisodeStats q_learn_episode(const Game& g, ntuple::NTupleNetwork& net, const AgentParams& params,
                             GameState s0, double alpha, double epsilon, Rng& rng,
                             EpisodeContext& ctx, const EventSink* sink = nullptr);

// Dispatch on the algorithm choice.
EpisodeStats run_episode(Algorithm alg, const Game& g, ntuple::NTupleNetwork& net,
                         const AgentParams& params, GameState s0, double alpha, double epsilon,
                         Rng& rng, EpisodeContext& ctx, const EventSink* sink = nullptr);

ntuple::NetMode net_mode_for(Algorithm alg);

}  // namespace farl::agents
