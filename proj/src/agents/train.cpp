#include "farl/agents/train.hpp"

#include "farl/games/ntuple_presets.hpp"
#include "farl/opponents/random_player.hpp"

namespace farl::agents {

GameState training_start(const Game& g, const AgentParams& params, Rng& rng) {
  GameState s = g.initial_state(rng);
  if (params.choose_start_01 && !s.terminal && rng.below(2) == 1) {
    const ActionId a = opponents::random_player(g, s, rng);
    s = make_action(g, s, a, params.afterstate, rng).next_state;
  }
  return s;
}

TrainResult train(const Game& g, Algorithm alg, const AgentParams& params, std::uint64_t seed,
                  const EvalHook* eval, const CurveSink* curve_sink) {
  params.validate();
  const auto tuples = games::tuples_from_spec(g, params.tuple_spec, derive_seed(seed, 0x709));
  ntuple::NTupleNetwork net(net_mode_for(alg), tuples, g.cell_alphabet(), g.num_actions(),
                            params.sigma, params.tcl);
  Rng rng(derive_seed(seed, 1));
  EpisodeContext ctx(g, params);

  TrainResult result{std::move(net), {}, 0};
  for (std::int64_t e = 0; e < params.train_episodes; ++e) {
    const double alpha = params.alpha_at(e);
    const double epsilon = params.epsilon_at(e);
    GameState s0 = training_start(g, params, rng);
    run_episode(alg, g, result.net, params, std::move(s0), alpha, epsilon, rng, ctx);
    ++result.episodes;

    if (params.num_eval > 0 && (e + 1) % params.num_eval == 0) {
      CurvePoint point;
      point.episode = e + 1;
      point.active_weight_fraction = result.net.active_weight_fraction();
      point.alpha = alpha;
      point.epsilon = epsilon;
      if (eval && *eval) {
        const EvalSample sample = (*eval)(result.net, e + 1);
        point.eval_opponent = sample.opponent;
        point.win_rate = sample.win_rate;
        point.score_mean = sample.score_mean;
        point.score_sd = sample.score_sd;
      } else {
        point.eval_opponent = "none";
        point.win_rate = point.score_mean = point.score_sd = 0.0;
      }
      if (curve_sink && *curve_sink) (*curve_sink)(point);
      result.curve.push_back(std::move(point));
    }
  }
  return result;
}

}  // namespace farl::agents
