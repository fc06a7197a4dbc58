#pragma once

#include <cstdint>
#include <string>

#include "farl/ntuple/network.hpp"

namespace farl::agents {

enum class Algorithm : std::uint8_t {
  td_farl = 0,    // value net, per-player chaining, final adaptation
  td_plain = 1,   // value net, per-player chaining, no final adaptation step
  sarsa_farl = 2, // q net, final adaptation
  sarsa = 3,      // q net, no final adaptation
  q_learn = 4,    // q net, max target
};

const char* to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& text);

// All learning hyperparameters and switches of one training setup.
// alpha and epsilon interpolate linearly per episode from start to
// final.
struct AgentParams {
  double alpha_start = 0.1;
  double alpha_final = 0.1;
  double epsilon_start = 0.1;
  double epsilon_final = 0.0;
  double lambda = 0.0;
  double gamma = 1.0;
  double horizon_cut = 0.1;
  int horizon_cap = -1;  // needed when lambda = 1

  bool farl = true;                // final adaptation of all players
  bool farl_terminal_zero = true;  // second part: terminal value -> 0
  bool afterstate = true;          // learn on afterstates (T_after)
  bool learn_from_rm = false;      // update after random moves (T_lrnRM)
  bool use_symmetry = true;
  bool normalize = false;          // rescale rewards to [0,1] in targets
  bool choose_start_01 = false;    // half the episodes start one random move in

  ntuple::Sigma sigma = ntuple::Sigma::tanh_sigmoid;
  ntuple::TclConfig tcl;
  ntuple::EligMode elig = ntuple::EligMode::et;

  std::int64_t train_episodes = 1;
  std::int64_t num_eval = 0;  // evaluation period; 0 = only train
  std::string tuple_spec = "default";

  void validate() const;
  int horizon() const { return ntuple::horizon_length(lambda, horizon_cut, horizon_cap); }

  double alpha_at(std::int64_t episode) const { return interp(alpha_start, alpha_final, episode); }
  double epsilon_at(std::int64_t episode) const {
    return interp(epsilon_start, epsilon_final, episode);
  }

 private:
  double interp(double a, double b, std::int64_t episode) const {
    if (train_episodes <= 1) return a;
    const double f = static_cast<double>(episode) / static_cast<double>(train_episodes - 1);
    return a + (b - a) * f;
  }
};

}  // namespace farl::agents
