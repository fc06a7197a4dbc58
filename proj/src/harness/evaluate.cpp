#include "farl/harness/evaluate.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "farl/games/factory.hpp"
#include "farl/opponents/opponent.hpp"

namespace farl::harness {

std::vector<GameState> othello_four_ply_starts() {
  // one start state per 4-ply move sequence (244 of them); transposed
  // sequences reaching the same position stay in with their
  // multiplicity, matching the published evaluation protocol
  auto g = games::make_game(GameSpec{GameName::othello});
  Rng rng(0);
  std::vector<GameState> frontier{g->initial_state(rng)};
  for (int ply = 0; ply < 4; ++ply) {
    std::vector<GameState> next;
    std::vector<ActionId> actions;
    for (const auto& s : frontier) {
      g->legal_actions(s, actions);
      for (const ActionId a : actions) {
        GameState n = g->compute_afterstate(s, a);
        if (!n.terminal) next.push_back(n);
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

std::vector<GameState> protocol_starts(const Game& g, Rng& rng) {
  switch (g.spec().name) {
    case GameName::tictactoe: {
      std::vector<GameState> starts{g.initial_state(rng)};
      for (int c = 0; c < 9; ++c) starts.push_back(g.compute_afterstate(starts[0], ActionId(c)));
      return starts;
    }
    case GameName::othello: return othello_four_ply_starts();
    default: return {g.initial_state(rng)};
  }
}

EvalOutcome evaluate(const Game& g, MovePolicy& agent, std::span<MovePolicy* const> others,
                     int episodes, Rng& rng, const std::vector<GameState>& starts) {
  const int players = g.num_players();
  if (static_cast<int>(others.size()) != players - 1)
    throw std::invalid_argument("evaluate: expected " + std::to_string(players - 1) +
                                " opponent seats, got " + std::to_string(others.size()));
  if (episodes < 1) throw std::invalid_argument("evaluate needs episodes >= 1");

  EvalOutcome out;
  out.opponent = others.empty() ? "none" : others[0]->name();
  out.role_mean.assign(static_cast<std::size_t>(players), 0.0);
  out.role_episodes.assign(static_cast<std::size_t>(players), 0);

  const int nstarts = starts.empty() ? 1 : static_cast<int>(starts.size());
  const int ncombos = players == 1 ? 1 : nstarts * players;
  double sum = 0.0, sum_sq = 0.0;
  int wins = 0, draws = 0, losses = 0;

  std::vector<MovePolicy*> seats(static_cast<std::size_t>(players));
  for (int e = 0; e < episodes; ++e) {
    const int combo = e % ncombos;
    const int agent_seat = players == 1 ? 0 : combo % players;
    const int start_idx = players == 1 ? 0 : combo / players;

    // seat the opponents in cyclic order after the agent
    seats[static_cast<std::size_t>(agent_seat)] = &agent;
    for (int k = 1; k < players; ++k)
      seats[static_cast<std::size_t>((agent_seat + k) % players)] = others[static_cast<std::size_t>(k - 1)];

    GameState s = starts.empty() ? g.initial_state(rng) : starts[static_cast<std::size_t>(start_idx)];
    while (!s.terminal) {
      MovePolicy* mover = seats[static_cast<std::size_t>(s.player_to_move)];
      const ActionId a = mover->select(g, s, rng);
      s = make_action(g, s, a, true, rng).next_state;
    }
    const double reward = s.scores[static_cast<std::size_t>(agent_seat)];
    sum += reward;
    sum_sq += reward * reward;
    out.role_mean[static_cast<std::size_t>(agent_seat)] += reward;
    out.role_episodes[static_cast<std::size_t>(agent_seat)] += 1;
    if (players == 2) {
      if (reward == 1.0)
        ++wins;
      else if (reward == 0.0)
        ++losses;
      else
        ++draws;
    }
  }

  out.episodes = episodes;
  out.mean = sum / episodes;
  const double var = sum_sq / episodes - out.mean * out.mean;
  out.sd = std::sqrt(std::max(0.0, var) * episodes / std::max(1, episodes - 1));
  for (int p = 0; p < players; ++p)
    if (out.role_episodes[static_cast<std::size_t>(p)] > 0)
      out.role_mean[static_cast<std::size_t>(p)] /= out.role_episodes[static_cast<std::size_t>(p)];
  if (players == 2) {
    out.win = static_cast<double>(wins) / episodes;
    out.draw = static_cast<double>(draws) / episodes;
    out.loss = static_cast<double>(losses) / episodes;
  }
  return out;
}

EvalOutcome evaluate_vs_spec(const Game& g, MovePolicy& agent, const std::string& opponent_spec,
                             int episodes, Rng& rng) {
  std::vector<std::unique_ptr<MovePolicy>> instances;
  std::vector<MovePolicy*> raw;
  for (int k = 1; k < g.num_players(); ++k) {
    instances.push_back(opponents::make_opponent(opponent_spec));
    raw.push_back(instances.back().get());
  }
  const auto starts = protocol_starts(g, rng);
  EvalOutcome out = evaluate(g, agent, raw, episodes, rng, g.stochastic() ? std::vector<GameState>{} : starts);
  if (raw.empty()) out.opponent = "none";
  return out;
}

}  // namespace farl::harness
