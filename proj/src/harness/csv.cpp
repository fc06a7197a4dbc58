#include "farl/harness/csv.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace farl::harness {

void write_curve_header(std::ostream& out) {
  out << "episode,eval_opponent,win_rate,score_mean,score_sd,active_weight_fraction,alpha,epsilon\n";
}

void write_curve_row(std::ostream& out, const agents::CurvePoint& p) {
  out << p.episode << ',' << p.eval_opponent << ',' << p.win_rate << ',' << p.score_mean << ','
      << p.score_sd << ',' << p.active_weight_fraction << ',' << p.alpha << ',' << p.epsilon
      << '\n';
}

void write_curve(const std::string& path, const std::vector<agents::CurvePoint>& curve) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_curve_header(out);
  for (const auto& p : curve) write_curve_row(out, p);
}

void write_report_header(std::ostream& out) {
  out << "game,algorithm,farl,opponent,role,win_rate_or_score,sd_of_mean,runs\n";
}

void write_report(std::ostream& out, const ExperimentConfig& cfg, const AblationResult& result) {
  write_report_header(out);
  const std::string game = to_string(cfg.game);
  for (const ArmSummary* arm : {&result.farl_arm, &result.no_farl_arm}) {
    for (const auto& opp : arm->opponents) {
      out << game << ',' << agents::to_string(cfg.algorithm) << ',' << (arm->farl ? 1 : 0) << ','
          << opp.opponent << ",all," << opp.mean << ',' << opp.sd_of_mean << ',' << cfg.runs
          << '\n';
      for (std::size_t p = 0; p < opp.role_mean.size(); ++p)
        out << game << ',' << agents::to_string(cfg.algorithm) << ',' << (arm->farl ? 1 : 0) << ','
            << opp.opponent << ',' << p << ',' << opp.role_mean[p] << ",," << cfg.runs << '\n';
    }
  }
}

void write_report(const std::string& path, const ExperimentConfig& cfg,
                  const AblationResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_report(out, cfg, result);
}

}  // namespace farl::harness
