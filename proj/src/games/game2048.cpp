#include "farl/games/game2048.hpp"

#include <cstdio>
#include <limits>
#include <sstream>

#include "farl/games/board_symmetry.hpp"

namespace farl::games {

namespace {

// cell order of one line in slide direction: line i, position j (j = 0
// is the edge the tiles move towards)
inline int line_cell(int dir, int line, int pos) {
  switch (dir) {
    case Game2048::kUp: return pos * 4 + line;
    case Game2048::kDown: return (3 - pos) * 4 + line;
    case Game2048::kLeft: return line * 4 + pos;
    default: return line * 4 + (3 - pos);
  }
}

// slide one line towards pos 0, merging equal neighbours once; returns
// the merge score and whether anything moved
bool slide_line(std::uint8_t vals[4], double& score) {
  std::uint8_t out[4] = {0, 0, 0, 0};
  int n = 0;
  bool moved = false;
  for (int i = 0; i < 4; ++i) {
    const std::uint8_t v = vals[i];
    if (v == 0) continue;
    if (n > 0 && out[n - 1] == v && v < 15) {
      out[n - 1] = static_cast<std::uint8_t>(v + 1);
      score += static_cast<double>(1u << (v + 1));
      moved = true;
    } else {
      out[n] = v;
      if (n != i) moved = true;
      ++n;
    }
  }
  for (int i = 0; i < 4; ++i) vals[i] = out[i];
  return moved;
}

}  // namespace

Game2048::Game2048() : Game(GameSpec{GameName::g2048}, 1, 16, 16, 4) {
  // directions under the dihedral transforms: track where the "up"
  // unit vector goes under each cell permutation
  for (const auto& perm : dihedral8_perms(4)) {
    std::vector<std::int16_t> amap(4);
    // transform maps cell (r,c) to perm[r*4+c]; a direction d maps to
    // the direction between the images of two vertically/horizontally
    // adjacent cells
    auto dir_of = [](int from, int to) {
      const int dr = to / 4 - from / 4, dc = to % 4 - from % 4;
      if (dr == -1) return kUp;
      if (dr == 1) return kDown;
      return dc == -1 ? kLeft : kRight;
    };
    const int c11 = perm[1 * 4 + 1];
    amap[kUp] = static_cast<std::int16_t>(dir_of(c11, perm[0 * 4 + 1]));
    amap[kDown] = static_cast<std::int16_t>(dir_of(c11, perm[2 * 4 + 1]));
    amap[kLeft] = static_cast<std::int16_t>(dir_of(c11, perm[1 * 4 + 0]));
    amap[kRight] = static_cast<std::int16_t>(dir_of(c11, perm[1 * 4 + 2]));
    add_symmetry({perm.data(), 16}, amap);
  }
}

int Game2048::count_empty(const GameState& s) {
  int n = 0;
  for (int i = 0; i < 16; ++i)
    if (s.cells[static_cast<std::size_t>(i)] == 0) ++n;
  return n;
}

bool Game2048::slides(const GameState& s, int dir) {
  for (int line = 0; line < 4; ++line) {
    std::uint8_t vals[4];
    for (int pos = 0; pos < 4; ++pos)
      vals[pos] = s.cells[static_cast<std::size_t>(line_cell(dir, line, pos))];
    double dummy = 0;
    if (slide_line(vals, dummy)) return true;
  }
  return false;
}

GameState Game2048::initial_state(Rng& rng) const {
  GameState s = blank_state();
  for (int k = 0; k < 2; ++k) s = add_random_part(s, rng);
  s.terminal = false;
  return s;
}

void Game2048::legal_actions(const GameState& s, std::vector<ActionId>& out) const {
  out.clear();
  for (int d = 0; d < 4; ++d)
    if (slides(s, d)) out.push_back(ActionId(d));
}

GameState Game2048::compute_afterstate(const GameState& s, ActionId a) const {
  const int dir = a.value();
  if (dir < 0 || dir >= 4) illegal_action(s, a, "unknown direction");
  GameState out = s;
  double score = 0;
  bool moved = false;
  for (int line = 0; line < 4; ++line) {
    std::uint8_t vals[4];
    for (int pos = 0; pos < 4; ++pos)
      vals[pos] = s.cells[static_cast<std::size_t>(line_cell(dir, line, pos))];
    moved |= slide_line(vals, score);
    for (int pos = 0; pos < 4; ++pos)
      out.cells[static_cast<std::size_t>(line_cell(dir, line, pos))] = vals[pos];
  }
  if (!moved) illegal_action(s, a, "slide does not change the board");
  out.scores[0] = s.scores[0] + score;
  out.move_counter = static_cast<std::int16_t>(s.move_counter + 1);
  return out;
}

GameState Game2048::add_random_part(const GameState& afterstate, Rng& rng) const {
  GameState out = afterstate;
  int empty[16], n = 0;
  for (int i = 0; i < 16; ++i)
    if (out.cells[static_cast<std::size_t>(i)] == 0) empty[n++] = i;
  if (n > 0) {
    const int cell = empty[rng.below(n)];
    out.cells[static_cast<std::size_t>(cell)] = rng.below(10) == 0 ? 2 : 1;
  }
  bool movable = false;
  for (int d = 0; d < 4 && !movable; ++d) movable = slides(out, d);
  out.terminal = !movable;
  return out;
}

double Game2048::max_reward() const { return std::numeric_limits<double>::infinity(); }

std::string Game2048::render_line(const GameState& s) const {
  std::ostringstream os;
  for (int r = 0; r < 4; ++r) {
    if (r) os << '|';
    for (int c = 0; c < 4; ++c) {
      if (c) os << ',';
      os << static_cast<int>(s.cells[static_cast<std::size_t>(r * 4 + c)]);
    }
  }
  return os.str();
}

std::string Game2048::render(const GameState& s) const {
  std::ostringstream os;
  os << "score " << s.scores[0] << '\n';
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const int v = s.cells[static_cast<std::size_t>(r * 4 + c)];
      char buf[8];
      std::snprintf(buf, sizeof(buf), "%6d", 1 << v);
      os << (v == 0 ? "     ." : buf);
    }
    os << '\n';
  }
  return os.str();
}

std::string Game2048::action_name(ActionId a) const {
  static const char* kNames[4] = {"up", "down", "left", "right"};
  return a.value() >= 0 && a.value() < 4 ? kNames[a.value()] : "?";
}

}  // namespace farl::games
