#include "farl/agents/policy.hpp"

#include <stdexcept>

namespace farl::agents {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::td_farl: return "td-farl";
    case Algorithm::td_plain: return "td-plain";
    case Algorithm::sarsa_farl: return "sarsa-farl";
    case Algorithm::sarsa: return "sarsa";
    case Algorithm::q_learn: return "q-learn";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& text) {
  if (text == "td-farl") return Algorithm::td_farl;
  if (text == "td-plain") return Algorithm::td_plain;
  if (text == "sarsa-farl") return Algorithm::sarsa_farl;
  if (text == "sarsa") return Algorithm::sarsa;
  if (text == "q-learn") return Algorithm::q_learn;
  throw std::invalid_argument("unknown algorithm '" + text + "'");
}

void AgentParams::validate() const {
  auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  if (alpha_start <= 0 || alpha_final <= 0) throw std::invalid_argument("alpha must be positive");
  if (!in(epsilon_start, 0, 1) || !in(epsilon_final, 0, 1))
    throw std::invalid_argument("epsilon must be in [0,1]");
  if (!in(lambda, 0, 1)) throw std::invalid_argument("lambda must be in [0,1]");
  if (!in(gamma, 0, 1)) throw std::invalid_argument("gamma must be in [0,1]");
  if (horizon_cut <= 0 || horizon_cut >= 1) throw std::invalid_argument("horizon cut must be in (0,1)");
  if (train_episodes < 1) throw std::invalid_argument("train_episodes must be >= 1");
  if (num_eval < 0) throw std::invalid_argument("num_eval must be >= 0");
  if (tcl.enabled() && tcl.init <= 0) throw std::invalid_argument("tcl init must be positive");
  ntuple::horizon_length(lambda, horizon_cut, horizon_cap);  // rejects lambda=1 without cap
}

double normalize_reward(const Game& g, bool normalize, double r) {
  if (!normalize) return r;
  if (!g.reward_bounded())
    throw std::invalid_argument("normalize requires a bounded reward range; " +
                                to_string(g.spec()) + " has none");
  const double lo = g.min_reward(), hi = g.max_reward();
  return (r - lo) / (hi - lo);
}

namespace {

template <class ValueOf>
Chosen epsilon_greedy(const Game& g, const GameState& s, double epsilon, Rng& rng, PolicyWork& work,
                      ValueOf&& value_of) {
  legal_actions(g, s, work.actions);
  if (work.actions.empty()) throw std::logic_error("no legal actions");
  if (epsilon > 0.0 && rng.unit() < epsilon) {
    const int k = rng.below(static_cast<int>(work.actions.size()));
    return Chosen{work.actions[static_cast<std::size_t>(k)], true};
  }
  double best = 0.0;
  work.ties.clear();
  for (int i = 0; i < static_cast<int>(work.actions.size()); ++i) {
    const double v = value_of(work.actions[static_cast<std::size_t>(i)]);
    if (work.ties.empty() || v > best) {
      best = v;
      work.ties.clear();
      work.ties.push_back(i);
    } else if (v == best) {
      work.ties.push_back(i);
    }
  }
  const int pick = work.ties.size() == 1
                       ? work.ties[0]
                       : work.ties[static_cast<std::size_t>(rng.below(static_cast<int>(work.ties.size())))];
  return Chosen{work.actions[static_cast<std::size_t>(pick)], false};
}

}  // namespace

Chosen choose_action_td(const Game& g, const ntuple::NTupleNetwork& net, const GameState& s,
                        double epsilon, double gamma, bool use_symmetry, bool normalize, Rng& rng,
                        PolicyWork& work) {
  const int mover = s.player_to_move;
  return epsilon_greedy(g, s, epsilon, rng, work, [&](ActionId a) {
    const GameState after = g.compute_afterstate(s, a);
    const double r = after.scores[static_cast<std::size_t>(mover)] - s.scores[static_cast<std::size_t>(mover)];
    symmetric_states(g, after, use_symmetry, false, work.orbit);
    return normalize_reward(g, normalize, r) + gamma * net.value(work.orbit);
  });
}

Chosen choose_action_q(const Game& g, const ntuple::NTupleNetwork& net, const GameState& s,
                       double epsilon, double gamma, bool use_symmetry, bool normalize, Rng& rng,
                       PolicyWork& work) {
  (void)gamma;
  (void)normalize;
  symmetric_states(g, s, use_symmetry, true, work.orbit);
  return epsilon_greedy(g, s, epsilon, rng, work,
                        [&](ActionId a) { return net.q_value(work.orbit, a); });
}

}  // namespace farl::agents
