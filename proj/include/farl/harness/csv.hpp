#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "farl/agents/train.hpp"
#include "farl/harness/ablation.hpp"

namespace farl::harness {

// Learning-curve CSV:
// episode,eval_opponent,win_rate,score_mean,score_sd,active_weight_fraction,alpha,epsilon
void write_curve_header(std::ostream& out);
void write_curve_row(std::ostream& out, const agents::CurvePoint& p);
void write_curve(const std::string& path, const std::vector<agents::CurvePoint>& curve);

// Report CSV:
// game,algorithm,farl,opponent,role,win_rate_or_score,sd_of_mean,runs
void write_report_header(std::ostream& out);
void write_report(std::ostream& out, const ExperimentConfig& cfg, const AblationResult& result);
void write_report(const std::string& path, const ExperimentConfig& cfg,
                  const AblationResult& result);

}  // namespace farl::harness
