#pragma once

#include <string>
#include <vector>

#include "farl/agents/params.hpp"
#include "farl/core/types.hpp"

namespace farl::harness {

// One experiment: game, algorithm, hyperparameters, seeds and the
// evaluation setup. Built from the per-game defaults plus overrides.
struct ExperimentConfig {
  GameSpec game;
  agents::Algorithm algorithm = agents::Algorithm::td_farl;
  agents::AgentParams params;
  int runs = 10;
  std::vector<std::string> opponents;
  int eval_episodes = 100;
  std::uint64_t seed = 1;
  int jobs = 0;  // 0: hardware concurrency
  // opponent of the during-training curve points ("none" disables)
  std::string curve_opponent = "random";
  int curve_episodes = 100;

  void validate() const;
};

// The published training setups of the seven games: schedules, tuple
// geometry, TCL mode, switches, episode budgets and the evaluation
// opponents of the result tables.
ExperimentConfig default_config(const GameSpec& game);

// Flat "key = value" text, one key per line, '#' comments. The `game`
// key selects the defaults; every other key overrides one field.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin);

// Apply one override; throws std::invalid_argument on unknown keys or
// bad values.
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

}  // namespace farl::harness
