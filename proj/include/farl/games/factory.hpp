#pragma once

#include <memory>
#include <string>

#include "farl/core/game.hpp"

namespace farl::games {

// Build the rule bundle for a spec; throws std::invalid_argument on
// unknown names or bad parameters.
std::unique_ptr<Game> make_game(const GameSpec& spec);

// Parse "tictactoe", "nim", "nim:4x7", "nim3p", "hex", "hex:5", ...
GameSpec parse_game_spec(const std::string& text);

}  // namespace farl::games
