// Command-line front end: train agents, evaluate them against the
// reference opponents, run FARL/no-FARL ablation batches, inspect and
// play saved agents.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "farl/agents/policy.hpp"
#include "farl/agents/train.hpp"
#include "farl/games/factory.hpp"
#include "farl/harness/ablation.hpp"
#include "farl/harness/config.hpp"
#include "farl/harness/csv.hpp"
#include "farl/harness/evaluate.hpp"
#include "farl/ntuple/serialize.hpp"
#include "farl/opponents/opponent.hpp"

namespace {

using namespace farl;

harness::ExperimentConfig build_config(const std::string& config_path, const std::string& game,
                                       const std::vector<std::string>& sets) {
  if (!config_path.empty() && !game.empty())
    throw std::invalid_argument("give either --config or --game, not both");
  if (config_path.empty() && game.empty())
    throw std::invalid_argument("one of --config or --game is required");
  harness::ExperimentConfig cfg = config_path.empty()
                                      ? harness::default_config(games::parse_game_spec(game))
                                      : harness::load_config(config_path);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    harness::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

int cmd_train(const harness::ExperimentConfig& cfg, std::uint64_t seed, std::string out_path,
              std::string curve_path) {
  const auto game = games::make_game(cfg.game);
  if (out_path.empty())
    out_path = to_string(cfg.game.name) + std::string("-") + agents::to_string(cfg.algorithm) +
               "-seed" + std::to_string(seed) + ".ntnf";
  if (curve_path.empty()) curve_path = out_path + ".curve.csv";

  std::ofstream curve_out(curve_path);
  if (!curve_out) throw std::runtime_error("cannot open '" + curve_path + "' for writing");
  harness::write_curve_header(curve_out);
  agents::CurveSink sink = [&](const agents::CurvePoint& p) {
    harness::write_curve_row(curve_out, p);
    curve_out.flush();
    std::cout << "episode " << p.episode << "  score " << p.score_mean << "  active "
              << p.active_weight_fraction << "  alpha " << p.alpha << "  epsilon " << p.epsilon
              << std::endl;
  };
  agents::EvalHook hook;
  if (cfg.params.num_eval > 0 && cfg.curve_opponent != "none") {
    hook = [&](const ntuple::NTupleNetwork& net, std::int64_t episode) {
      agents::NetGreedyPolicy agent(net, cfg.params.gamma, cfg.params.use_symmetry);
      Rng eval_rng(derive_seed(derive_seed(cfg.seed, seed), 0xE7A1000 + static_cast<std::uint64_t>(episode)));
      const auto outcome =
          harness::evaluate_vs_spec(*game, agent, cfg.curve_opponent, cfg.curve_episodes, eval_rng);
      agents::EvalSample sample;
      sample.opponent = outcome.opponent;
      sample.win_rate = game->num_players() == 2 ? outcome.mean : 0.0;
      sample.score_mean = outcome.mean;
      sample.score_sd = outcome.sd;
      return sample;
    };
  }
  const auto result = agents::train(*game, cfg.algorithm, cfg.params, seed,
                                    hook ? &hook : nullptr, &sink);
  ntuple::save_agent(out_path, result.net, cfg.game, cfg.params.use_symmetry, cfg.params.gamma);
  std::cout << "trained " << result.episodes << " episodes of " << to_string(cfg.game) << " ("
            << agents::to_string(cfg.algorithm) << ")\nagent:  " << out_path
            << "\ncurve:  " << curve_path << " (" << result.curve.size() << " points)"
            << std::endl;
  return 0;
}

int cmd_eval(const std::string& agent_path, const std::string& opponent, int episodes,
             std::uint64_t seed, const std::string& csv_path) {
  auto saved = ntuple::load_agent(agent_path);
  const auto game = games::make_game(saved.game);
  agents::NetGreedyPolicy agent(saved.net, saved.gamma, saved.use_symmetry, agent_path);
  Rng rng(derive_seed(seed, 0xEA1));
  const auto outcome = harness::evaluate_vs_spec(*game, agent, opponent, episodes, rng);
  std::cout << to_string(saved.game) << " vs " << outcome.opponent << " over " << outcome.episodes
            << " episodes\n";
  std::cout << "mean " << outcome.mean << "  sd " << outcome.sd;
  if (game->num_players() == 2)
    std::cout << "  (win " << outcome.win << ", draw " << outcome.draw << ", loss " << outcome.loss
              << ")";
  std::cout << '\n';
  for (std::size_t p = 0; p < outcome.role_mean.size(); ++p)
    std::cout << "  role " << p << ": " << outcome.role_mean[p] << " over "
              << outcome.role_episodes[p] << " episodes\n";
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
    harness::write_report_header(out);
    const char* mode = saved.net.mode() == ntuple::NetMode::value_net ? "v-net" : "q-net";
    out << to_string(saved.game.name) << ',' << mode << ",," << outcome.opponent << ",all,"
        << outcome.mean << ',' << outcome.sd / std::sqrt(outcome.episodes) << ",1\n";
    for (std::size_t p = 0; p < outcome.role_mean.size(); ++p)
      out << to_string(saved.game.name) << ',' << mode << ",," << outcome.opponent << ',' << p
          << ',' << outcome.role_mean[p] << ",,1\n";
  }
  return 0;
}

int cmd_ablate(const harness::ExperimentConfig& cfg, const std::string& report_path) {
  const auto result = harness::run_ablation(cfg, &std::cout);
  std::cout << '\n' << harness::format_ablation_table(cfg, result);
  if (!report_path.empty()) {
    harness::write_report(report_path, cfg, result);
    std::cout << "report: " << report_path << std::endl;
  }
  return 0;
}

int cmd_inspect(const std::string& agent_path) {
  const auto saved = ntuple::load_agent(agent_path);
  const auto& net = saved.net;
  std::cout << "game:            " << to_string(saved.game) << '\n';
  std::cout << "mode:            " << (net.mode() == ntuple::NetMode::value_net ? "V" : "Q")
            << "-net\n";
  std::cout << "sigma:           "
            << (net.sigma() == ntuple::Sigma::identity ? "identity" : "tanh") << '\n';
  std::cout << "symmetry:        " << (saved.use_symmetry ? "on" : "off") << '\n';
  std::cout << "gamma:           " << saved.gamma << '\n';
  const auto& tcl = net.tcl();
  std::cout << "tcl:             ";
  switch (tcl.transfer) {
    case ntuple::TclTransfer::none: std::cout << "off\n"; break;
    case ntuple::TclTransfer::identity: std::cout << "id, init " << tcl.init << '\n'; break;
    case ntuple::TclTransfer::exponential:
      std::cout << "exp, beta " << tcl.beta << ", init " << tcl.init << '\n';
      break;
  }
  std::cout << "tuples:          " << net.num_tuples() << '\n';
  for (int i = 0; i < net.num_tuples(); ++i) {
    std::cout << "  #" << i << " (" << net.tuple(i).size() << " cells):";
    for (const int c : net.tuple(i).cells) std::cout << ' ' << c;
    std::cout << '\n';
  }
  std::cout << "weights:         " << net.num_weights() << '\n';
  std::cout << "active weights:  " << net.num_touched() << " (" << net.active_weight_fraction()
            << ")\n";
  std::cout << "weight checksum: " << ntuple::weight_checksum(net) << '\n';
  if (tcl.enabled()) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < net.num_tuples(); ++i) {
      const auto ns = net.tcl_accum_net(i);
      const auto as = net.tcl_accum_abs(i);
      for (std::size_t k = 0; k < ns.size(); ++k) {
        const double rate = ntuple::tcl_rate(ns[k], as[k], tcl.transfer, tcl.beta);
        lo = std::min(lo, rate);
        hi = std::max(hi, rate);
      }
    }
    std::cout << "tcl rate range:  [" << lo << ", " << hi << "]\n";
  }
  return 0;
}

int cmd_play(const std::string& agent_path, int human_seat, std::uint64_t seed) {
  auto saved = ntuple::load_agent(agent_path);
  const auto game = games::make_game(saved.game);
  agents::NetGreedyPolicy agent(saved.net, saved.gamma, saved.use_symmetry);
  Rng rng(derive_seed(seed, 0x971AE));
  if (human_seat < 0 || human_seat >= game->num_players())
    throw std::invalid_argument("seat must be in 0.." + std::to_string(game->num_players() - 1));

  GameState s = game->initial_state(rng);
  std::cout << "you are player " << human_seat << "; moves are entered by action id (q quits)\n";
  while (!s.terminal) {
    std::cout << '\n' << game->render(s);
    const auto legal = legal_actions(*game, s);
    if (s.player_to_move == human_seat) {
      std::cout << "legal:";
      for (const ActionId a : legal) std::cout << ' ' << a.value() << "=" << game->action_name(a);
      std::cout << "\nyour move> " << std::flush;
      std::string token;
      if (!(std::cin >> token)) return 0;
      if (token == "q" || token == "quit") return 0;
      int id = -1;
      try {
        id = std::stoi(token);
      } catch (const std::exception&) {
        std::cout << "not a move id; try again\n";
        continue;
      }
      const ActionId a(id);
      if (std::find(legal.begin(), legal.end(), a) == legal.end()) {
        std::cout << "illegal move " << id << "; try again\n";
        continue;  // re-prompt
      }
      s = make_action(*game, s, a, true, rng).next_state;
    } else {
      const ActionId a = agent.select(*game, s, rng);
      std::cout << "agent plays " << game->action_name(a) << '\n';
      s = make_action(*game, s, a, true, rng).next_state;
    }
  }
  std::cout << '\n' << game->render(s) << "final scores:";
  for (int p = 0; p < game->num_players(); ++p) std::cout << ' ' << s.scores[static_cast<std::size_t>(p)];
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-tuple TD/SARSA/Q learning for N-player board games"};
  app.require_subcommand(1);

  std::string config_path, game_arg, out_path, curve_path, report_path, agent_path, opponent,
      csv_path;
  std::vector<std::string> sets;
  std::uint64_t seed = 1;
  int episodes = 200, human_seat = 0, jobs = 0;

  auto* train = app.add_subcommand("train", "train one agent and write agent file + curve CSV");
  train->add_option("--config", config_path, "experiment config file");
  train->add_option("--game", game_arg, "game spec with built-in defaults, e.g. nim:3x5");
  train->add_option("--seed", seed, "run seed");
  train->add_option("--out", out_path, "agent output path (.ntnf)");
  train->add_option("--curve", curve_path, "learning-curve CSV path");
  train->add_option("--set", sets, "config override key=value")->take_all();

  auto* eval = app.add_subcommand("eval", "evaluate a saved agent against an opponent");
  eval->add_option("--agent", agent_path, "agent file")->required();
  eval->add_option("--opponent", opponent, "opponent spec: random | maxn:<d> | mcts:<i>")
      ->required();
  eval->add_option("--episodes", episodes, "evaluation episodes");
  eval->add_option("--seed", seed, "evaluation seed");
  eval->add_option("--csv", csv_path, "write a report CSV here");

  auto* ablate = app.add_subcommand("ablate", "paired FARL vs no-FARL training batch");
  ablate->add_option("--config", config_path, "experiment config file");
  ablate->add_option("--game", game_arg, "game spec with built-in defaults");
  ablate->add_option("--jobs", jobs, "parallel training jobs");
  ablate->add_option("--report", report_path, "report CSV path");
  ablate->add_option("--set", sets, "config override key=value")->take_all();

  auto* play = app.add_subcommand("play", "play against a saved agent in the terminal");
  play->add_option("--agent", agent_path, "agent file")->required();
  play->add_option("--seat", human_seat, "your seat (0 moves first)");
  play->add_option("--seed", seed, "game seed");

  auto* inspect = app.add_subcommand("inspect", "print tuple/weight/TCL summaries of an agent");
  inspect->add_option("--agent", agent_path, "agent file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      auto cfg = build_config(config_path, game_arg, sets);
      return cmd_train(cfg, seed, out_path, curve_path);
    }
    if (eval->parsed()) return cmd_eval(agent_path, opponent, episodes, seed, csv_path);
    if (ablate->parsed()) {
      auto cfg = build_config(config_path, game_arg, sets);
      if (jobs > 0) cfg.jobs = jobs;
      return cmd_ablate(cfg, report_path);
    }
    if (play->parsed()) return cmd_play(agent_path, human_seat, seed);
    if (inspect->parsed()) return cmd_inspect(agent_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
