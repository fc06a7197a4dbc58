#include "farl/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "farl/games/factory.hpp"
#include "farl/opponents/opponent.hpp"

namespace farl::harness {

namespace {

using agents::Algorithm;
using ntuple::EligMode;
using ntuple::Sigma;
using ntuple::TclConfig;
using ntuple::TclTransfer;

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  params.validate();
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (eval_episodes < 1) throw std::invalid_argument("eval_episodes must be >= 1");
  if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");
  for (const auto& spec : opponents) opponents::make_opponent(spec);  // must parse
  if (curve_opponent != "none") opponents::make_opponent(curve_opponent);
}

ExperimentConfig default_config(const GameSpec& game) {
  ExperimentConfig cfg;
  cfg.game = game;
  auto& p = cfg.params;
  p.gamma = 1.0;
  p.afterstate = true;
  p.use_symmetry = true;
  p.normalize = false;
  p.sigma = Sigma::tanh_sigmoid;
  switch (game.name) {
    case GameName::tictactoe:
      p.epsilon_start = 0.1;
      p.epsilon_final = 0.0;
      p.alpha_start = 1.0;
      p.alpha_final = 0.5;
      p.lambda = 0.0;
      p.tcl = TclConfig{TclTransfer::none, 2.7, 1e-4};
      p.train_episodes = 30000;
      p.num_eval = 1000;
      cfg.opponents = {"maxn:10"};
      cfg.eval_episodes = 100;
      break;
    case GameName::nim:
      p.epsilon_start = 0.1;
      p.epsilon_final = 0.0;
      p.alpha_start = p.alpha_final = 0.5;
      p.lambda = 0.5;
      p.horizon_cut = 0.1;
      p.elig = EligMode::et;
      p.learn_from_rm = true;
      p.tcl = TclConfig{TclTransfer::identity, 2.7, 1e-4};
      p.train_episodes = 20000;
      p.num_eval = 1000;
      cfg.opponents = {"maxn:15"};
      cfg.eval_episodes = 60;
      break;
    case GameName::nim3p:
      p.epsilon_start = 0.15;
      p.epsilon_final = 0.0;
      p.alpha_start = p.alpha_final = 0.2;
      p.lambda = 0.5;
      p.horizon_cut = 0.01;
      p.elig = EligMode::reset;
      p.learn_from_rm = false;
      p.choose_start_01 = true;
      p.tcl = TclConfig{TclTransfer::identity, 2.7, 1e-4};
      p.train_episodes = 300000;
      p.num_eval = 10000;
      cfg.opponents = {"maxn:15", "mcts:5000"};
      cfg.eval_episodes = 60;
      break;
    case GameName::connect_four:
      p.epsilon_start = 0.1;
      p.epsilon_final = 0.0;
      p.alpha_start = p.alpha_final = 3.7;
      p.lambda = 0.0;
      p.tcl = TclConfig{TclTransfer::exponential, 2.7, 1e-4};
      p.train_episodes = 5000000;
      p.num_eval = 100000;
      cfg.opponents = {"random"};
      cfg.eval_episodes = 500;
      break;
    case GameName::hex:
      p.epsilon_start = 0.2;
      p.epsilon_final = 0.0;
      p.alpha_start = 1.0;
      p.alpha_final = 0.5;
      p.lambda = 0.0;
      p.choose_start_01 = true;
      p.learn_from_rm = true;
      p.tcl = TclConfig{TclTransfer::identity, 2.7, 1e-4};
      p.train_episodes = 300000;
      p.num_eval = 10000;
      cfg.opponents = {"mcts:10000"};
      cfg.eval_episodes = 50;
      break;
    case GameName::othello:
      p.epsilon_start = 0.2;
      p.epsilon_final = 0.0;
      p.alpha_start = p.alpha_final = 0.2;
      p.lambda = 0.5;
      p.horizon_cut = 0.01;
      p.elig = EligMode::et;
      p.choose_start_01 = true;
      p.tcl = TclConfig{TclTransfer::exponential, 2.7, 1e-4};
      p.train_episodes = 250000;
      p.num_eval = 2000;
      cfg.opponents = {"random"};
      cfg.eval_episodes = 100;
      break;
    case GameName::g2048:
      p.epsilon_start = p.epsilon_final = 0.0;
      p.alpha_start = p.alpha_final = 1.0;
      p.lambda = 0.0;
      p.sigma = Sigma::identity;
      p.tcl = TclConfig{TclTransfer::identity, 2.7, 1e-4};
      p.train_episodes = 200000;
      p.num_eval = 5000;
      cfg.opponents = {};
      cfg.eval_episodes = 300;
      cfg.curve_opponent = "none";
      break;
  }
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  auto& p = cfg.params;
  try {
    if (key == "game") {
      throw std::invalid_argument("the game key is handled first and may appear only once");
    } else if (key == "algorithm") {
      cfg.algorithm = agents::parse_algorithm(value);
    } else if (key == "runs") {
      cfg.runs = std::stoi(value);
    } else if (key == "eval_episodes") {
      cfg.eval_episodes = std::stoi(value);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "jobs") {
      cfg.jobs = std::stoi(value);
    } else if (key == "opponents") {
      cfg.opponents = split_list(value);
    } else if (key == "curve_opponent") {
      cfg.curve_opponent = value;
    } else if (key == "curve_episodes") {
      cfg.curve_episodes = std::stoi(value);
    } else if (key == "alpha_start") {
      p.alpha_start = std::stod(value);
    } else if (key == "alpha_final") {
      p.alpha_final = std::stod(value);
    } else if (key == "epsilon_start") {
      p.epsilon_start = std::stod(value);
    } else if (key == "epsilon_final") {
      p.epsilon_final = std::stod(value);
    } else if (key == "lambda") {
      p.lambda = std::stod(value);
    } else if (key == "gamma") {
      p.gamma = std::stod(value);
    } else if (key == "horizon_cut") {
      p.horizon_cut = std::stod(value);
    } else if (key == "horizon_cap") {
      p.horizon_cap = std::stoi(value);
    } else if (key == "farl") {
      p.farl = parse_bool(value);
    } else if (key == "farl_terminal_zero") {
      p.farl_terminal_zero = parse_bool(value);
    } else if (key == "afterstate") {
      p.afterstate = parse_bool(value);
    } else if (key == "learn_from_rm") {
      p.learn_from_rm = parse_bool(value);
    } else if (key == "use_symmetry") {
      p.use_symmetry = parse_bool(value);
    } else if (key == "normalize") {
      p.normalize = parse_bool(value);
    } else if (key == "choose_start_01") {
      p.choose_start_01 = parse_bool(value);
    } else if (key == "sigma") {
      if (value == "identity")
        p.sigma = Sigma::identity;
      else if (value == "tanh")
        p.sigma = Sigma::tanh_sigmoid;
      else
        throw std::invalid_argument("sigma must be identity or tanh");
    } else if (key == "eligibility") {
      if (value == "et")
        p.elig = EligMode::et;
      else if (value == "reset")
        p.elig = EligMode::reset;
      else
        throw std::invalid_argument("eligibility must be et or reset");
    } else if (key == "tcl") {
      if (value == "none")
        p.tcl.transfer = TclTransfer::none;
      else if (value == "id")
        p.tcl.transfer = TclTransfer::identity;
      else if (value == "exp")
        p.tcl.transfer = TclTransfer::exponential;
      else
        throw std::invalid_argument("tcl must be none, id or exp");
    } else if (key == "tcl_beta") {
      p.tcl.beta = std::stod(value);
    } else if (key == "tcl_init") {
      p.tcl.init = std::stod(value);
    } else if (key == "train_episodes") {
      p.train_episodes = std::stoll(value);
    } else if (key == "num_eval") {
      p.num_eval = std::stoll(value);
    } else if (key == "ntuples") {
      p.tuple_spec = value;
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument("bad value '" + value + "' for key '" + key + "': " + e.what());
  }
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  // first pass: the game key selects the defaults
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string game_value;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "game") {
      if (!game_value.empty())
        throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": duplicate game key");
      game_value = value;
    } else {
      pairs.emplace_back(key, value);
    }
  }
  if (game_value.empty()) throw std::invalid_argument(origin + ": missing required key 'game'");
  ExperimentConfig cfg = default_config(games::parse_game_spec(game_value));
  for (const auto& [key, value] : pairs) {
    try {
      apply_override(cfg, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(origin + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace farl::harness
