#include "farl/games/factory.hpp"

#include <stdexcept>

#include "farl/games/connect_four.hpp"
#include "farl/games/game2048.hpp"
#include "farl/games/hex.hpp"
#include "farl/games/nim.hpp"
#include "farl/games/othello.hpp"
#include "farl/games/tictactoe.hpp"

namespace farl::games {

std::unique_ptr<Game> make_game(const GameSpec& spec) {
  switch (spec.name) {
    case GameName::tictactoe: return std::make_unique<TicTacToe>();
    case GameName::nim: return std::make_unique<Nim>(spec.heaps, spec.stones, 2);
    case GameName::nim3p: return std::make_unique<Nim>(spec.heaps, spec.stones, 3);
    case GameName::connect_four: return std::make_unique<ConnectFour>();
    case GameName::hex: return std::make_unique<HexGame>(spec.hex_size);
    case GameName::othello: return std::make_unique<Othello>();
    case GameName::g2048: return std::make_unique<Game2048>();
  }
  throw std::invalid_argument("unknown game");
}

GameSpec parse_game_spec(const std::string& text) {
  std::string base = text;
  std::string arg;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    base = text.substr(0, colon);
    arg = text.substr(colon + 1);
  }
  GameSpec spec;
  if (base == "tictactoe" || base == "ttt") {
    spec.name = GameName::tictactoe;
  } else if (base == "nim" || base == "nim3p") {
    spec.name = base == "nim" ? GameName::nim : GameName::nim3p;
    if (!arg.empty()) {
      const auto x = arg.find('x');
      if (x == std::string::npos) throw std::invalid_argument("nim size must be HxS, e.g. nim:3x5");
      spec.heaps = std::stoi(arg.substr(0, x));
      spec.stones = std::stoi(arg.substr(x + 1));
    }
  } else if (base == "connectfour" || base == "c4") {
    spec.name = GameName::connect_four;
  } else if (base == "hex") {
    spec.name = GameName::hex;
    if (!arg.empty()) spec.hex_size = std::stoi(arg);
  } else if (base == "othello") {
    spec.name = GameName::othello;
  } else if (base == "2048") {
    spec.name = GameName::g2048;
  } else {
    throw std::invalid_argument("unknown game '" + text + "'");
  }
  if (!arg.empty() && spec.name != GameName::nim && spec.name != GameName::nim3p &&
      spec.name != GameName::hex)
    throw std::invalid_argument("game '" + base + "' takes no size argument");
  return spec;
}

}  // namespace farl::games
