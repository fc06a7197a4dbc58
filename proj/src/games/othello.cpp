#include "farl/games/othello.hpp"

#include <sstream>

#include "farl/games/board_symmetry.hpp"

namespace farl::games {

namespace {

constexpr int kDirs[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                             {0, 1},   {1, -1}, {1, 0},  {1, 1}};

// stones flipped in one direction when `mark` is placed at (r,c); 0 if
// the direction does not capture
int capture_run(const GameState& s, int r, int c, int dr, int dc, std::uint8_t mark) {
  const std::uint8_t other = mark == 1 ? 2 : 1;
  int run = 0;
  int rr = r + dr, cc = c + dc;
  while (rr >= 0 && rr < 8 && cc >= 0 && cc < 8 &&
         s.cells[static_cast<std::size_t>(rr * 8 + cc)] == other) {
    ++run;
    rr += dr;
    cc += dc;
  }
  if (run == 0 || rr < 0 || rr >= 8 || cc < 0 || cc >= 8) return 0;
  return s.cells[static_cast<std::size_t>(rr * 8 + cc)] == mark ? run : 0;
}

bool legal_at(const GameState& s, int cell, int player) {
  if (s.cells[static_cast<std::size_t>(cell)] != 0) return false;
  const auto mark = static_cast<std::uint8_t>(player + 1);
  const int r = cell / 8, c = cell % 8;
  for (const auto& d : kDirs)
    if (capture_run(s, r, c, d[0], d[1], mark) > 0) return true;
  return false;
}

}  // namespace

Othello::Othello() : Game(GameSpec{GameName::othello}, 2, 64, 3, 64) {
  for (const auto& perm : dihedral8_perms(8)) {
    std::vector<std::int16_t> amap(64);
    for (int c = 0; c < 64; ++c) amap[static_cast<std::size_t>(c)] = perm[static_cast<std::size_t>(c)];
    add_symmetry({perm.data(), 64}, amap);
  }
}

GameState Othello::initial_state(Rng&) const {
  GameState s = blank_state();
  s.cells[3 * 8 + 3] = 2;
  s.cells[3 * 8 + 4] = 1;
  s.cells[4 * 8 + 3] = 1;
  s.cells[4 * 8 + 4] = 2;
  return s;
}

bool Othello::any_move(const GameState& s, int player) {
  for (int cell = 0; cell < 64; ++cell)
    if (legal_at(s, cell, player)) return true;
  return false;
}

void Othello::legal_actions(const GameState& s, std::vector<ActionId>& out) const {
  out.clear();
  for (int cell = 0; cell < 64; ++cell)
    if (legal_at(s, cell, s.player_to_move)) out.push_back(ActionId(cell));
}

GameState Othello::compute_afterstate(const GameState& s, ActionId a) const {
  const int cell = a.value();
  if (cell < 0 || cell >= 64) illegal_action(s, a, "cell out of range");
  const int mover = s.player_to_move;
  const auto mark = static_cast<std::uint8_t>(mover + 1);
  const int r = cell / 8, c = cell % 8;
  GameState out = s;
  int flipped = 0;
  if (s.cells[static_cast<std::size_t>(cell)] == 0) {
    for (const auto& d : kDirs) {
      const int run = capture_run(s, r, c, d[0], d[1], mark);
      for (int i = 1; i <= run; ++i)
        out.cells[static_cast<std::size_t>((r + i * d[0]) * 8 + (c + i * d[1]))] = mark;
      flipped += run;
    }
  }
  if (flipped == 0) illegal_action(s, a, "move captures nothing");
  out.cells[static_cast<std::size_t>(cell)] = mark;
  out.move_counter = static_cast<std::int16_t>(s.move_counter + 1);

  const int opponent = 1 - mover;
  if (any_move(out, opponent)) {
    out.player_to_move = static_cast<std::int8_t>(opponent);
  } else if (any_move(out, mover)) {
    out.player_to_move = static_cast<std::int8_t>(mover);  // opponent passes
  } else {
    out.terminal = true;
    out.player_to_move = static_cast<std::int8_t>(opponent);
    int discs[2] = {0, 0};
    for (int i = 0; i < 64; ++i)
      if (out.cells[static_cast<std::size_t>(i)]) ++discs[out.cells[static_cast<std::size_t>(i)] - 1];
    if (discs[0] > discs[1])
      out.scores[0] = 1.0;
    else if (discs[1] > discs[0])
      out.scores[1] = 1.0;
    else
      out.scores[0] = out.scores[1] = 0.5;
  }
  return out;
}

std::string Othello::render_line(const GameState& s) const {
  std::string out;
  for (int r = 0; r < 8; ++r) {
    if (r) out += '|';
    for (int c = 0; c < 8; ++c) {
      const auto v = s.cells[static_cast<std::size_t>(r * 8 + c)];
      out += v == 0 ? '.' : (v == 1 ? 'B' : 'W');
    }
  }
  return out;
}

std::string Othello::render(const GameState& s) const {
  std::ostringstream os;
  os << "  a b c d e f g h\n";
  for (int r = 0; r < 8; ++r) {
    os << r + 1 << ' ';
    for (int c = 0; c < 8; ++c) {
      const auto v = s.cells[static_cast<std::size_t>(r * 8 + c)];
      os << (v == 0 ? '.' : (v == 1 ? 'B' : 'W')) << ' ';
    }
    os << '\n';
  }
  return os.str();
}

std::string Othello::action_name(ActionId a) const {
  return std::string(1, static_cast<char>('a' + a.value() % 8)) + std::to_string(a.value() / 8 + 1);
}

}  // namespace farl::games
