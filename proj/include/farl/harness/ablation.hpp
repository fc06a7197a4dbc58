#pragma once

#include <iosfwd>
#include <optional>

#include "farl/agents/train.hpp"
#include "farl/harness/config.hpp"
#include "farl/harness/evaluate.hpp"

namespace farl::harness {

// One (seed, arm) training job's results.
struct RunMetrics {
  int run = 0;
  bool farl = true;
  std::vector<EvalOutcome> per_opponent;
  double active_weight_fraction = 0.0;
  std::int64_t episodes = 0;
};

struct OpponentSummary {
  std::string opponent;
  double mean = 0.0;        // mean of per-run means
  double sd_of_mean = 0.0;  // sample SD over runs / sqrt(runs)
  std::vector<double> role_mean;
};

struct ArmSummary {
  bool farl = true;
  std::vector<OpponentSummary> opponents;
  double active_weight_fraction = 0.0;  // mean over runs
};

struct AblationResult {
  std::vector<RunMetrics> runs;  // all (arm, run) pairs
  ArmSummary farl_arm;
  ArmSummary no_farl_arm;
};

ArmSummary summarize_arm(const std::vector<RunMetrics>& runs, bool farl);

// Train `runs` seeds per arm with identical settings except the FARL
// flag, evaluate every run against every configured opponent, and
// aggregate mean and standard deviation of the mean per arm.
// Independent (seed, arm) jobs run on a small worker pool; results are
// deterministic in the config seed regardless of scheduling.
// `progress` (optional) receives one line per finished job.
AblationResult run_ablation(const ExperimentConfig& cfg, std::ostream* progress = nullptr);

// Train one run and evaluate it against the configured opponents.
RunMetrics run_single(const ExperimentConfig& cfg, bool farl, int run,
                      std::optional<agents::TrainResult>* keep_net = nullptr,
                      std::vector<agents::CurvePoint>* curve = nullptr);

std::string format_ablation_table(const ExperimentConfig& cfg, const AblationResult& result);

}  // namespace farl::harness
