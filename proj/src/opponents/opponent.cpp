#include "farl/opponents/opponent.hpp"

#include <stdexcept>
#include <vector>

#include "farl/opponents/max_n.hpp"
#include "farl/opponents/mcts.hpp"
#include "farl/opponents/random_player.hpp"

namespace farl::opponents {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::unique_ptr<MovePolicy> make_opponent(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  try {
    if (kind == "random") {
      if (parts.size() > 1) throw std::invalid_argument("random takes no arguments");
      return std::make_unique<RandomPolicy>();
    }
    if (kind == "maxn") {
      if (parts.size() != 2) throw std::invalid_argument("expected maxn:<depth>");
      const int depth = std::stoi(parts[1]);
      if (depth < 1) throw std::invalid_argument("depth must be >= 1");
      return std::make_unique<MaxNPolicy>(depth);
    }
    if (kind == "mcts") {
      if (parts.size() < 2 || parts.size() > 4)
        throw std::invalid_argument("expected mcts:<iterations>[:<exploration>[:<rollout cap>]]");
      MctsParams p;
      p.iterations = std::stoi(parts[1]);
      if (p.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
      if (parts.size() > 2) p.exploration = std::stod(parts[2]);
      if (parts.size() > 3) p.rollout_depth_cap = std::stoi(parts[3]);
      return std::make_unique<MctsPolicy>(p);
    }
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("bad opponent spec '" + spec + "': " + e.what());
  }
  throw std::invalid_argument("unknown opponent kind '" + kind + "' in '" + spec + "'");
}

}  // namespace farl::opponents
