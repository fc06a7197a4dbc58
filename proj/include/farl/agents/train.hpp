#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "farl/agents/episode.hpp"

namespace farl::agents {

// One learning-curve record, written every num_eval episodes.
struct CurvePoint {
  std::int64_t episode;
  std::string eval_opponent;
  double win_rate;
  double score_mean;
  double score_sd;
  double active_weight_fraction;
  double alpha;
  double epsilon;
};

struct EvalSample {
  std::string opponent = "none";
  double win_rate = 0.0;
  double score_mean = 0.0;
  double score_sd = 0.0;
};

// Injected by the harness: evaluate the frozen net at a curve point on
// its own random stream.
using EvalHook = std::function<EvalSample(const ntuple::NTupleNetwork& net, std::int64_t episode)>;
// Called after each curve point, so partial curves survive an abort.
using CurveSink = std::function<void(const CurvePoint&)>;

struct TrainResult {
  ntuple::NTupleNetwork net;
  std::vector<CurvePoint> curve;
  std::int64_t episodes = 0;
};

// Self-play training: `train_episodes` episodes of the chosen driver
// with alpha and epsilon interpolated linearly per episode. The tuple
// set is frozen at creation from the run seed. Identical (config,
// seed) pairs give bit-identical networks; evaluation runs on a
// derived stream and never touches the training stream.
TrainResult train(const Game& g, Algorithm alg, const AgentParams& params, std::uint64_t seed,
                  const EvalHook* eval = nullptr, const CurveSink* curve_sink = nullptr);

// The start state of one training episode: the standard opening, or
// with choose_start_01 a coin flip between it and one uniformly random
// first move played into it.
GameState training_start(const Game& g, const AgentParams& params, Rng& rng);

}  // namespace farl::agents
