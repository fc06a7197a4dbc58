#include "farl/games/tictactoe.hpp"

#include <sstream>

#include "farl/games/board_symmetry.hpp"

namespace farl::games {

namespace {

constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                              {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};

bool wins(const GameState& s, std::uint8_t mark) {
  for (const auto& line : kLines)
    if (s.cells[static_cast<std::size_t>(line[0])] == mark &&
        s.cells[static_cast<std::size_t>(line[1])] == mark &&
        s.cells[static_cast<std::size_t>(line[2])] == mark)
      return true;
  return false;
}

char glyph(std::uint8_t v) { return v == 0 ? '.' : (v == 1 ? 'X' : 'O'); }

}  // namespace

TicTacToe::TicTacToe() : Game(GameSpec{GameName::tictactoe}, 2, 9, 3, 9) {
  for (const auto& perm : dihedral8_perms(3)) {
    std::vector<std::int16_t> amap(9);
    for (int c = 0; c < 9; ++c) amap[static_cast<std::size_t>(c)] = perm[static_cast<std::size_t>(c)];
    add_symmetry({perm.data(), 9}, amap);
  }
}

GameState TicTacToe::initial_state(Rng&) const { return blank_state(); }

void TicTacToe::legal_actions(const GameState& s, std::vector<ActionId>& out) const {
  out.clear();
  for (int c = 0; c < 9; ++c)
    if (s.cells[static_cast<std::size_t>(c)] == 0) out.push_back(ActionId(c));
}

GameState TicTacToe::compute_afterstate(const GameState& s, ActionId a) const {
  if (a.value() < 0 || a.value() >= 9) illegal_action(s, a, "cell out of range");
  if (s.cells[static_cast<std::size_t>(a.value())] != 0) illegal_action(s, a, "cell occupied");
  GameState out = s;
  const int mover = s.player_to_move;
  out.cells[static_cast<std::size_t>(a.value())] = static_cast<std::uint8_t>(mover + 1);
  out.move_counter = static_cast<std::int16_t>(s.move_counter + 1);
  out.player_to_move = static_cast<std::int8_t>(1 - mover);
  if (wins(out, static_cast<std::uint8_t>(mover + 1))) {
    out.terminal = true;
    out.scores[static_cast<std::size_t>(mover)] = 1.0;
    out.scores[static_cast<std::size_t>(1 - mover)] = 0.0;
  } else if (out.move_counter == 9) {
    out.terminal = true;
    out.scores[0] = out.scores[1] = 0.5;
  }
  return out;
}

std::string TicTacToe::render_line(const GameState& s) const {
  std::string out;
  for (int r = 0; r < 3; ++r) {
    if (r) out += '|';
    for (int c = 0; c < 3; ++c) out += glyph(s.cells[static_cast<std::size_t>(r * 3 + c)]);
  }
  return out;
}

std::string TicTacToe::render(const GameState& s) const {
  std::ostringstream os;
  for (int r = 0; r < 3; ++r) {
    os << ' ';
    for (int c = 0; c < 3; ++c) {
      const int i = r * 3 + c;
      const auto v = s.cells[static_cast<std::size_t>(i)];
      os << (v == 0 ? static_cast<char>('0' + i) : glyph(v));
      if (c < 2) os << " | ";
    }
    os << '\n';
    if (r < 2) os << " --+---+--\n";
  }
  return os.str();
}

std::string TicTacToe::action_name(ActionId a) const { return "cell " + std::to_string(a.value()); }

}  // namespace farl::games
