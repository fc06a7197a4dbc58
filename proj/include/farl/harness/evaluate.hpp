#pragma once

#include <span>
#include <vector>

#include "farl/core/game.hpp"

namespace farl::harness {

// Result of evaluating one agent against one opponent setup.
// `mean` is the agent's average per-episode reward: for 2-player games
// that is the win rate with draws counting one half, for Nim3P the
// average score, for 2048 the average episode score.
struct EvalOutcome {
  std::string opponent;
  int episodes = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample SD over episodes
  std::vector<double> role_mean;  // per agent seat
  std::vector<int> role_episodes;
  double win = 0.0, draw = 0.0, loss = 0.0;  // fractions, 2-player games
};

// Start positions of the game's evaluation protocol: TicTacToe uses
// the empty board plus all nine one-ply openings, Othello all
// distinct 4-ply positions, every other game its standard opening.
std::vector<GameState> protocol_starts(const Game& g, Rng& rng);

// All distinct positions after exactly four plies from the standard
// Othello opening.
std::vector<GameState> othello_four_ply_starts();

// Play `episodes` games of `agent` against the `others` seats (one
// opponent for 2-player games, two independent instances for Nim3P;
// empty for 2048). Episodes cycle through every (start, seat)
// combination so the counts differ by at most one. The agent policy is
// read-only; evaluation never mutates it.
EvalOutcome evaluate(const Game& g, MovePolicy& agent, std::span<MovePolicy* const> others,
                     int episodes, Rng& rng, const std::vector<GameState>& starts);

// Convenience: protocol starts, one opponent spec instantiated per
// non-agent seat.
EvalOutcome evaluate_vs_spec(const Game& g, MovePolicy& agent, const std::string& opponent_spec,
                             int episodes, Rng& rng);

}  // namespace farl::harness
