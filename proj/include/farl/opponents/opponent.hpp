#pragma once

#include <memory>
#include <string>

#include "farl/core/game.hpp"

namespace farl::opponents {

// Opponent spec strings: "random", "maxn:<depth>",
// "mcts:<iterations>[:<exploration>[:<rollout cap>]]".
std::unique_ptr<MovePolicy> make_opponent(const std::string& spec);

}  // namespace farl::opponents
