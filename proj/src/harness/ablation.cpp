#include "farl/harness/ablation.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "farl/agents/policy.hpp"
#include "farl/games/factory.hpp"

namespace farl::harness {

RunMetrics run_single(const ExperimentConfig& cfg, bool farl, int run,
                      std::optional<agents::TrainResult>* keep_net,
                      std::vector<agents::CurvePoint>* curve) {
  const auto game = games::make_game(cfg.game);
  ExperimentConfig local = cfg;
  local.params.farl = farl;
  const std::uint64_t run_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(run));

  agents::EvalHook hook;
  if (local.params.num_eval > 0 && cfg.curve_opponent != "none") {
    hook = [&](const ntuple::NTupleNetwork& net, std::int64_t episode) {
      agents::NetGreedyPolicy agent(net, local.params.gamma, local.params.use_symmetry);
      Rng eval_rng(derive_seed(run_seed, 0xE7A1000 + static_cast<std::uint64_t>(episode)));
      const EvalOutcome outcome =
          evaluate_vs_spec(*game, agent, cfg.curve_opponent, cfg.curve_episodes, eval_rng);
      agents::EvalSample sample;
      sample.opponent = outcome.opponent;
      sample.win_rate = game->num_players() == 2 ? outcome.mean : 0.0;
      sample.score_mean = outcome.mean;
      sample.score_sd = outcome.sd;
      return sample;
    };
  }
  agents::TrainResult trained =
      agents::train(*game, cfg.algorithm, local.params, run_seed, hook ? &hook : nullptr);

  RunMetrics metrics;
  metrics.run = run;
  metrics.farl = farl;
  metrics.active_weight_fraction = trained.net.active_weight_fraction();
  metrics.episodes = trained.episodes;
  agents::NetGreedyPolicy agent(trained.net, local.params.gamma, local.params.use_symmetry);
  for (std::size_t oi = 0; oi < cfg.opponents.size(); ++oi) {
    Rng eval_rng(derive_seed(run_seed, 0xEEAA00 + oi));
    metrics.per_opponent.push_back(
        evaluate_vs_spec(*game, agent, cfg.opponents[oi], cfg.eval_episodes, eval_rng));
  }
  if (cfg.opponents.empty()) {
    // score-based games: evaluate the agent on its own episodes
    Rng eval_rng(derive_seed(run_seed, 0xEEAA00));
    metrics.per_opponent.push_back(
        evaluate_vs_spec(*game, agent, "none", cfg.eval_episodes, eval_rng));
  }
  if (curve) *curve = trained.curve;
  if (keep_net) keep_net->emplace(std::move(trained));
  return metrics;
}

ArmSummary summarize_arm(const std::vector<RunMetrics>& runs, bool farl) {
  ArmSummary arm;
  arm.farl = farl;
  std::vector<const RunMetrics*> mine;
  for (const auto& r : runs)
    if (r.farl == farl) mine.push_back(&r);
  const int n = static_cast<int>(mine.size());
  const std::size_t nopp = mine.empty() ? 0 : mine[0]->per_opponent.size();
  for (std::size_t oi = 0; oi < nopp; ++oi) {
    OpponentSummary s;
    s.opponent = mine[0]->per_opponent[oi].opponent;
    double sum = 0, sum_sq = 0;
    for (const auto* r : mine) {
      const double m = r->per_opponent[oi].mean;
      sum += m;
      sum_sq += m * m;
    }
    s.mean = sum / n;
    const double var = n > 1 ? (sum_sq - n * s.mean * s.mean) / (n - 1) : 0.0;
    s.sd_of_mean = std::sqrt(std::max(0.0, var) / n);
    // per-role means averaged over runs
    const std::size_t roles = mine[0]->per_opponent[oi].role_mean.size();
    s.role_mean.assign(roles, 0.0);
    for (const auto* r : mine)
      for (std::size_t p = 0; p < roles; ++p) s.role_mean[p] += r->per_opponent[oi].role_mean[p] / n;
    arm.opponents.push_back(std::move(s));
  }
  for (const auto* r : mine) arm.active_weight_fraction += r->active_weight_fraction / n;
  return arm;
}

AblationResult run_ablation(const ExperimentConfig& cfg, std::ostream* progress) {
  cfg.validate();
  struct Job {
    bool farl;
    int run;
  };
  std::vector<Job> jobs;
  for (const bool farl : {true, false})
    for (int run = 0; run < cfg.runs; ++run) jobs.push_back({farl, run});

  AblationResult result;
  result.runs.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  int workers = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));

  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      result.runs[j] = run_single(cfg, jobs[j].farl, jobs[j].run);
      if (progress) {
        std::lock_guard<std::mutex> lock(log_mutex);
        const auto& m = result.runs[j];
        *progress << (m.farl ? "farl" : "no-farl") << " run " << m.run << ":";
        for (const auto& o : m.per_opponent)
          *progress << "  vs " << o.opponent << " " << std::fixed << std::setprecision(3) << o.mean;
        *progress << "  (active " << std::setprecision(4) << m.active_weight_fraction << ")\n";
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  result.farl_arm = summarize_arm(result.runs, true);
  result.no_farl_arm = summarize_arm(result.runs, false);
  return result;
}

std::string format_ablation_table(const ExperimentConfig& cfg, const AblationResult& result) {
  std::ostringstream os;
  os << to_string(cfg.game) << ", " << agents::to_string(cfg.algorithm) << ", " << cfg.runs
     << " runs x " << cfg.params.train_episodes << " episodes\n";
  os << std::left << std::setw(16) << "opponent" << std::right << std::setw(18) << "FARL"
     << std::setw(18) << "no-FARL" << '\n';
  for (std::size_t oi = 0; oi < result.farl_arm.opponents.size(); ++oi) {
    const auto& f = result.farl_arm.opponents[oi];
    const auto& n = result.no_farl_arm.opponents[oi];
    auto cell = [](const OpponentSummary& s) {
      std::ostringstream c;
      c << std::fixed << std::setprecision(3) << s.mean << " +- " << s.sd_of_mean;
      return c.str();
    };
    os << std::left << std::setw(16) << f.opponent << std::right << std::setw(18) << cell(f)
       << std::setw(18) << cell(n) << '\n';
  }
  os << std::left << std::setw(16) << "active weights" << std::right << std::setw(18)
     << result.farl_arm.active_weight_fraction << std::setw(18)
     << result.no_farl_arm.active_weight_fraction << '\n';
  return os.str();
}

}  // namespace farl::harness
