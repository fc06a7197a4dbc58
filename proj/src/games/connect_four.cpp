#include "farl/games/connect_four.hpp"

#include <sstream>

#include "farl/games/board_symmetry.hpp"

namespace farl::games {

namespace {

inline int idx(int row, int col) { return row * ConnectFour::kCols + col; }

// four-in-a-row through (row,col) in any direction
bool wins_at(const GameState& s, int row, int col, std::uint8_t mark) {
  static constexpr int kDirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
  for (const auto& d : kDirs) {
    int run = 1;
    for (int sign = -1; sign <= 1; sign += 2) {
      int r = row + sign * d[0], c = col + sign * d[1];
      while (r >= 0 && r < ConnectFour::kRows && c >= 0 && c < ConnectFour::kCols &&
             s.cells[static_cast<std::size_t>(idx(r, c))] == mark) {
        ++run;
        r += sign * d[0];
        c += sign * d[1];
      }
    }
    if (run >= 4) return true;
  }
  return false;
}

}  // namespace

ConnectFour::ConnectFour()
    : Game(GameSpec{GameName::connect_four}, 2, kCols * kRows, 4, kCols) {
  bool first = true;
  for (const auto& perm : mirror_lr_perms(kCols, kRows)) {
    std::vector<std::int16_t> amap(kCols);
    for (int c = 0; c < kCols; ++c)
      amap[static_cast<std::size_t>(c)] = static_cast<std::int16_t>(first ? c : kCols - 1 - c);
    add_symmetry({perm.data(), static_cast<std::size_t>(kCols * kRows)}, amap);
    first = false;
  }
}

GameState ConnectFour::initial_state(Rng&) const {
  GameState s = blank_state();
  for (int c = 0; c < kCols; ++c) s.cells[static_cast<std::size_t>(idx(0, c))] = kReachable;
  return s;
}

void ConnectFour::legal_actions(const GameState& s, std::vector<ActionId>& out) const {
  out.clear();
  for (int c = 0; c < kCols; ++c) {
    const auto top = s.cells[static_cast<std::size_t>(idx(kRows - 1, c))];
    if (top == 0 || top == kReachable) out.push_back(ActionId(c));
  }
}

GameState ConnectFour::compute_afterstate(const GameState& s, ActionId a) const {
  const int col = a.value();
  if (col < 0 || col >= kCols) illegal_action(s, a, "column out of range");
  // the reachable marker is the drop target of its column
  int row = -1;
  for (int r = 0; r < kRows; ++r)
    if (s.cells[static_cast<std::size_t>(idx(r, col))] == kReachable) {
      row = r;
      break;
    }
  if (row < 0) illegal_action(s, a, "column full");
  GameState out = s;
  const int mover = s.player_to_move;
  out.cells[static_cast<std::size_t>(idx(row, col))] = static_cast<std::uint8_t>(mover + 1);
  if (row + 1 < kRows) out.cells[static_cast<std::size_t>(idx(row + 1, col))] = kReachable;
  out.move_counter = static_cast<std::int16_t>(s.move_counter + 1);
  out.player_to_move = static_cast<std::int8_t>(1 - mover);
  if (wins_at(out, row, col, static_cast<std::uint8_t>(mover + 1))) {
    out.terminal = true;
    out.scores[static_cast<std::size_t>(mover)] = 1.0;
  } else if (out.move_counter == kCols * kRows) {
    out.terminal = true;
    out.scores[0] = out.scores[1] = 0.5;
  }
  return out;
}

std::string ConnectFour::render_line(const GameState& s) const {
  std::string out;
  for (int r = kRows - 1; r >= 0; --r) {
    if (r < kRows - 1) out += '|';
    for (int c = 0; c < kCols; ++c) {
      const auto v = s.cells[static_cast<std::size_t>(idx(r, c))];
      out += v == 1 ? 'Y' : (v == 2 ? 'R' : '.');
    }
  }
  return out;
}

std::string ConnectFour::render(const GameState& s) const {
  std::ostringstream os;
  for (int r = kRows - 1; r >= 0; --r) {
    for (int c = 0; c < kCols; ++c) {
      const auto v = s.cells[static_cast<std::size_t>(idx(r, c))];
      os << (v == 1 ? 'Y' : (v == 2 ? 'R' : '.')) << ' ';
    }
    os << '\n';
  }
  os << "0 1 2 3 4 5 6\n";
  return os.str();
}

std::string ConnectFour::action_name(ActionId a) const { return "column " + std::to_string(a.value()); }

}  // namespace farl::games
