#include "farl/games/hex.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

#include "farl/games/board_symmetry.hpp"

namespace farl::games {

namespace {
constexpr int kDirs[6][2] = {{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}};
}

HexGame::HexGame(int size)
    : Game(GameSpec{GameName::hex, 3, 5, size}, 2, size * size, 3, size * size) {
  if (size < 2 || size * size > kMaxCells) throw std::invalid_argument("hex: bad board size");
  for (const auto& perm : rot180_perms(size)) {
    std::vector<std::int16_t> amap(static_cast<std::size_t>(num_actions_));
    for (int c = 0; c < num_actions_; ++c) amap[static_cast<std::size_t>(c)] = perm[static_cast<std::size_t>(c)];
    add_symmetry({perm.data(), static_cast<std::size_t>(num_cells_)}, amap);
  }
}

GameState HexGame::initial_state(Rng&) const { return blank_state(); }

void HexGame::legal_actions(const GameState& s, std::vector<ActionId>& out) const {
  out.clear();
  for (int c = 0; c < num_cells_; ++c)
    if (s.cells[static_cast<std::size_t>(c)] == 0) out.push_back(ActionId(c));
}

void HexGame::neighbours(int cell, std::vector<int>& out) const {
  out.clear();
  const int n = size();
  const int r = cell / n, c = cell % n;
  for (const auto& d : kDirs) {
    const int rr = r + d[0], cc = c + d[1];
    if (rr >= 0 && rr < n && cc >= 0 && cc < n) out.push_back(rr * n + cc);
  }
}

bool HexGame::connects(const GameState& s, int player) const {
  // BFS over the player's stones from his first edge to his second.
  const int n = size();
  const auto mark = static_cast<std::uint8_t>(player + 1);
  std::array<std::uint8_t, kMaxCells> seen{};
  std::array<std::uint8_t, kMaxCells> stack{};
  int top = 0;
  for (int i = 0; i < n; ++i) {
    const int cell = player == 0 ? i : i * n;  // top row / left column
    if (s.cells[static_cast<std::size_t>(cell)] == mark) {
      seen[static_cast<std::size_t>(cell)] = 1;
      stack[static_cast<std::size_t>(top++)] = static_cast<std::uint8_t>(cell);
    }
  }
  while (top > 0) {
    const int cell = stack[static_cast<std::size_t>(--top)];
    const int r = cell / n, c = cell % n;
    if ((player == 0 && r == n - 1) || (player == 1 && c == n - 1)) return true;
    for (const auto& d : kDirs) {
      const int rr = r + d[0], cc = c + d[1];
      if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
      const int nc = rr * n + cc;
      if (!seen[static_cast<std::size_t>(nc)] && s.cells[static_cast<std::size_t>(nc)] == mark) {
        seen[static_cast<std::size_t>(nc)] = 1;
        stack[static_cast<std::size_t>(top++)] = static_cast<std::uint8_t>(nc);
      }
    }
  }
  return false;
}

GameState HexGame::compute_afterstate(const GameState& s, ActionId a) const {
  if (a.value() < 0 || a.value() >= num_actions_) illegal_action(s, a, "cell out of range");
  if (s.cells[static_cast<std::size_t>(a.value())] != 0) illegal_action(s, a, "cell occupied");
  GameState out = s;
  const int mover = s.player_to_move;
  out.cells[static_cast<std::size_t>(a.value())] = static_cast<std::uint8_t>(mover + 1);
  out.move_counter = static_cast<std::int16_t>(s.move_counter + 1);
  out.player_to_move = static_cast<std::int8_t>(1 - mover);
  if (connects(out, mover)) {
    out.terminal = true;
    out.scores[static_cast<std::size_t>(mover)] = 1.0;
  }
  return out;
}

std::string HexGame::render_line(const GameState& s) const {
  const int n = size();
  std::string out;
  for (int r = 0; r < n; ++r) {
    if (r) out += '|';
    for (int c = 0; c < n; ++c) {
      const auto v = s.cells[static_cast<std::size_t>(r * n + c)];
      out += v == 0 ? '.' : (v == 1 ? 'X' : 'O');
    }
  }
  return out;
}

std::string HexGame::render(const GameState& s) const {
  // X connects top-bottom, O connects left-right; rows shift right to
  // suggest the hex layout.
  const int n = size();
  std::ostringstream os;
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < r; ++i) os << ' ';
    for (int c = 0; c < n; ++c) {
      const auto v = s.cells[static_cast<std::size_t>(r * n + c)];
      os << (v == 0 ? '.' : (v == 1 ? 'X' : 'O'));
      if (c < n - 1) os << ' ';
    }
    os << '\n';
  }
  return os.str();
}

std::string HexGame::action_name(ActionId a) const {
  const int n = size();
  return std::string(1, static_cast<char>('a' + a.value() % n)) + std::to_string(a.value() / n + 1);
}

}  // namespace farl::games
