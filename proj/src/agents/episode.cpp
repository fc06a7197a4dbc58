#include "farl/agents/episode.hpp"

#include <stdexcept>

namespace farl::agents {

using ntuple::EligibilityHorizon;
using ntuple::NetMode;
using ntuple::NTupleNetwork;
using ntuple::td_lambda_update;

EpisodeContext::EpisodeContext(const Game& g, const AgentParams& params) {
  const int h = params.horizon();
  for (int p = 0; p < g.num_players(); ++p)
    horizon.emplace_back(h, params.lambda, params.elig);
}

void EpisodeContext::reset() {
  for (auto& hz : horizon) hz.clear();
}

ntuple::NetMode net_mode_for(Algorithm alg) {
  switch (alg) {
    case Algorithm::td_farl:
    case Algorithm::td_plain: return NetMode::value_net;
    default: return NetMode::q_net;
  }
}

namespace {

void emit(const EventSink* sink, UpdateEvent::Kind kind, int player, int move_index,
          const SymmetrySet& head_orbit, double target, double delta, bool random_generated) {
  if (!sink || !*sink) return;
  // hash of the orbit's canonical first member identifies the adapted state
  (*sink)(UpdateEvent{kind, player, move_index, state_hash(head_orbit.states[0]), target, delta,
                      random_generated});
}

RewardTuple scores_of(const Game& g, const GameState& s) {
  RewardTuple r;
  r.n = g.num_players();
  for (int p = 0; p < r.n; ++p) r[p] = s.scores[static_cast<std::size_t>(p)];
  return r;
}

// Terminal adaptation: every other player adapts his last
// (after)state towards his terminal delta reward; optionally the
// terminal afterstate itself is pulled towards 0 (value nets only --
// a terminal Q value is never used as a target).
void final_adapt_agents(const Game& g, NTupleNetwork& net, const AgentParams& params, int p_final,
                        const RewardTuple& rewards, double alpha, int move_index,
                        EpisodeContext& ctx, const EventSink* sink) {
  const bool q_mode = net.mode() == NetMode::q_net;
  for (int p = 0; p < g.num_players(); ++p) {
    if (p == p_final) continue;
    auto& hz = ctx.horizon[static_cast<std::size_t>(p)];
    if (hz.empty()) continue;
    const double target = normalize_reward(g, params.normalize, rewards[p]);
    const double current = q_mode ? net.q_value(hz.head().orbit, hz.head().action)
                                  : net.value(hz.head().orbit);
    const double delta = target - current;
    td_lambda_update(net, hz, delta, alpha, params.learn_from_rm, false);
    emit(sink, UpdateEvent::Kind::final_reward, p, move_index, hz.head().orbit, target, delta, false);
  }
  if (!q_mode && params.farl_terminal_zero) {
    auto& hz = ctx.horizon[static_cast<std::size_t>(p_final)];
    const double current = net.value(hz.head().orbit);
    const double delta = 0.0 - current;
    td_lambda_update(net, hz, delta, alpha, params.learn_from_rm, false);
    emit(sink, UpdateEvent::Kind::final_zero, p_final, move_index, hz.head().orbit, 0.0, delta, false);
  }
}

EpisodeStats td_episode_impl(const Game& g, NTupleNetwork& net, const AgentParams& params,
                             bool use_farl, GameState s, double alpha, double epsilon, Rng& rng,
                             EpisodeContext& ctx, const EventSink* sink) {
  if (net.mode() != NetMode::value_net) throw std::logic_error("TD drivers need a value net");
  ctx.reset();
  EpisodeStats stats;
  if (s.terminal) {
    stats.final_scores = scores_of(g, s);
    return stats;
  }
  for (;;) {
    const int mover = s.player_to_move;
    const Chosen chosen = choose_action_td(g, net, s, epsilon, params.gamma, params.use_symmetry,
                                           params.normalize, rng, ctx.policy);
    const Transition tr = make_action(g, s, chosen.action, params.afterstate, rng);

    // AdaptAgentV: pull the mover's previous afterstate towards
    // r + gamma * V(new afterstate)
    symmetric_states(g, tr.afterstate, params.use_symmetry, false, ctx.scratch);
    auto& hz = ctx.horizon[static_cast<std::size_t>(mover)];
    if (!hz.empty()) {
      const double target = normalize_reward(g, params.normalize, tr.rewards[mover]) +
                            params.gamma * net.value(ctx.scratch);
      const double delta = target - net.value(hz.head().orbit);
      td_lambda_update(net, hz, delta, alpha, params.learn_from_rm, chosen.was_random);
      if (params.learn_from_rm || !chosen.was_random)
        emit(sink, UpdateEvent::Kind::adapt_v, mover, stats.moves, hz.head().orbit, target, delta,
             chosen.was_random);
    }
    if (params.elig == ntuple::EligMode::reset && chosen.was_random) hz.clear();
    hz.push_swap(ctx.scratch, chosen.action, chosen.was_random);
    ++stats.moves;

    if (tr.next_state.terminal) {
      if (use_farl)
        final_adapt_agents(g, net, params, mover, tr.rewards, alpha, stats.moves, ctx, sink);
      stats.final_scores = scores_of(g, tr.next_state);
      return stats;
    }
    s = tr.next_state;
  }
}

EpisodeStats sarsa_q_impl(const Game& g, NTupleNetwork& net, const AgentParams& params,
                          bool use_farl, bool q_learning, GameState s, double alpha, double epsilon,
                          Rng& rng, EpisodeContext& ctx, const EventSink* sink) {
  if (net.mode() != NetMode::q_net) throw std::logic_error("SARSA/Q drivers need a q net");
  ctx.reset();
  EpisodeStats stats;
  if (s.terminal) {
    stats.final_scores = scores_of(g, s);
    return stats;
  }

  auto push_state = [&](int player, const GameState& state, const Chosen& chosen) {
    if (params.elig == ntuple::EligMode::reset && chosen.was_random)
      ctx.horizon[static_cast<std::size_t>(player)].clear();
    symmetric_states(g, state, params.use_symmetry, true, ctx.scratch);
    ctx.horizon[static_cast<std::size_t>(player)].push_swap(ctx.scratch, chosen.action,
                                                            chosen.was_random);
  };

  Chosen chosen = choose_action_q(g, net, s, epsilon, params.gamma, params.use_symmetry,
                                  params.normalize, rng, ctx.policy);
  push_state(s.player_to_move, s, chosen);

  for (;;) {
    const Transition tr = make_action(g, s, chosen.action, params.afterstate, rng);
    const GameState& next = tr.next_state;
    const int p_next = next.player_to_move;

    // AdaptAgentQ for the player to act in `next`
    double m_value = 0.0;
    if (!next.terminal) {
      if (q_learning) {
        // max over the legal actions of `next`
        symmetric_states(g, next, params.use_symmetry, true, ctx.scratch);
        legal_actions(g, next, ctx.policy.actions);
        bool first = true;
        for (const ActionId a : ctx.policy.actions) {
          const double q = net.q_value(ctx.scratch, a);
          if (first || q > m_value) m_value = q;
          first = false;
        }
      } else {
        // fresh policy draw, discarded afterwards; choose_action_q
        // leaves next's orbit in the policy scratch
        const Chosen probe = choose_action_q(g, net, next, epsilon, params.gamma,
                                             params.use_symmetry, params.normalize, rng, ctx.policy);
        m_value = net.q_value(ctx.policy.orbit, probe.action);
      }
    }
    auto& hz = ctx.horizon[static_cast<std::size_t>(p_next)];
    if (!hz.empty()) {
      const double target =
          normalize_reward(g, params.normalize, tr.rewards[p_next]) + params.gamma * m_value;
      const double delta = target - net.q_value(hz.head().orbit, hz.head().action);
      td_lambda_update(net, hz, delta, alpha, params.learn_from_rm, chosen.was_random);
      if (params.learn_from_rm || !chosen.was_random)
        emit(sink, UpdateEvent::Kind::adapt_q, p_next, stats.moves, hz.head().orbit, target, delta,
             chosen.was_random);
    }
    ++stats.moves;

    if (next.terminal) {
      if (use_farl)
        final_adapt_agents(g, net, params, p_next, tr.rewards, alpha, stats.moves, ctx, sink);
      stats.final_scores = scores_of(g, next);
      return stats;
    }

    // choose the really played action anew, after the adaptation
    chosen = choose_action_q(g, net, next, epsilon, params.gamma, params.use_symmetry,
                             params.normalize, rng, ctx.policy);
    push_state(p_next, next, chosen);
    s = next;
  }
}

}  // namespace

EpisodeStats td_farl_episode(const Game& g, NTupleNetwork& net, const AgentParams& params,
                             GameState s0, double alpha, double epsilon, Rng& rng,
                             EpisodeContext& ctx, const EventSink* sink) {
  return td_episode_impl(g, net, params, params.farl, std::move(s0), alpha, epsilon, rng, ctx, sink);
}

EpisodeStats td_plain_episode(const Game& g, NTupleNetwork& net, const AgentParams& params,
                              GameState s0, double alpha, double epsilon, Rng& rng,
                              EpisodeContext& ctx, const EventSink* sink) {
  // Alg-1-style: the in-episode chaining only. The terminal-zero step
  // follows the same switches as the FARL driver so that both drivers
  // coincide on 1-player games.
  if (net.mode() != NetMode::value_net) throw std::logic_error("TD drivers need a value net");
  ctx.reset();
  EpisodeStats stats;
  GameState s = std::move(s0);
  if (s.terminal) {
    stats.final_scores = scores_of(g, s);
    return stats;
  }
  for (;;) {
    const int mover = s.player_to_move;
    const Chosen chosen = choose_action_td(g, net, s, epsilon, params.gamma, params.use_symmetry,
                                           params.normalize, rng, ctx.policy);
    const Transition tr = make_action(g, s, chosen.action, params.afterstate, rng);
    symmetric_states(g, tr.afterstate, params.use_symmetry, false, ctx.scratch);
    auto& hz = ctx.horizon[static_cast<std::size_t>(mover)];
    if (!hz.empty()) {
      const double target = normalize_reward(g, params.normalize, tr.rewards[mover]) +
                            params.gamma * net.value(ctx.scratch);
      const double delta = target - net.value(hz.head().orbit);
      td_lambda_update(net, hz, delta, alpha, params.learn_from_rm, chosen.was_random);
      if (params.learn_from_rm || !chosen.was_random)
        emit(sink, UpdateEvent::Kind::adapt_v, mover, stats.moves, hz.head().orbit, target, delta,
             chosen.was_random);
    }
    if (params.elig == ntuple::EligMode::reset && chosen.was_random) hz.clear();
    hz.push_swap(ctx.scratch, chosen.action, chosen.was_random);
    ++stats.moves;
    if (tr.next_state.terminal) {
      if (params.farl && params.farl_terminal_zero) {
        const double current = net.value(hz.head().orbit);
        td_lambda_update(net, hz, -current, alpha, params.learn_from_rm, false);
        emit(sink, UpdateEvent::Kind::final_zero, mover, stats.moves, hz.head().orbit, 0.0,
             -current, false);
      }
      stats.final_scores = scores_of(g, tr.next_state);
      return stats;
    }
    s = tr.next_state;
  }
}

EpisodeStats sarsa_episode(const Game& g, NTupleNetwork& net, const AgentParams& params,
                           bool use_farl, GameState s0, double alpha, double epsilon, Rng& rng,
                           EpisodeContext& ctx, const EventSink* sink) {
  return sarsa_q_impl(g, net, params, use_farl, false, std::move(s0), alpha, epsilon, rng, ctx, sink);
}

EpisodeStats q_learn_episode(const Game& g, NTupleNetwork& net, const AgentParams& params,
                             GameState s0, double alpha, double epsilon, Rng& rng,
                             EpisodeContext& ctx, const EventSink* sink) {
  return sarsa_q_impl(g, net, params, params.farl, true, std::move(s0), alpha, epsilon, rng, ctx,
                      sink);
}

EpisodeStats run_episode(Algorithm alg, const Game& g, NTupleNetwork& net, const AgentParams& params,
                         GameState s0, double alpha, double epsilon, Rng& rng, EpisodeContext& ctx,
                         const EventSink* sink) {
  switch (alg) {
    case Algorithm::td_farl:
      return td_farl_episode(g, net, params, std::move(s0), alpha, epsilon, rng, ctx, sink);
    case Algorithm::td_plain:
      return td_plain_episode(g, net, params, std::move(s0), alpha, epsilon, rng, ctx, sink);
    case Algorithm::sarsa_farl:
      return sarsa_episode(g, net, params, params.farl, std::move(s0), alpha, epsilon, rng, ctx, sink);
    case Algorithm::sarsa:
      return sarsa_episode(g, net, params, false, std::move(s0), alpha, epsilon, rng, ctx, sink);
    case Algorithm::q_learn:
      return q_learn_episode(g, net, params, std::move(s0), alpha, epsilon, rng, ctx, sink);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace farl::agents
