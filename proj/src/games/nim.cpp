#include "farl/games/nim.hpp"

#include <sstream>
#include <stdexcept>

#include "farl/games/board_symmetry.hpp"

namespace farl::games {

Nim::Nim(int heaps, int stones, int players)
    : Game(GameSpec{players == 3 ? GameName::nim3p : GameName::nim, heaps, stones},
           players, heaps, stones + 1, heaps * stones) {
  if (heaps < 1 || stones < 1) throw std::invalid_argument("nim: heaps and stones must be >= 1");
  if (heaps > kMaxCells) throw std::invalid_argument("nim: too many heaps");
  if (players != 2 && players != 3) throw std::invalid_argument("nim: 2 or 3 players");
  if (heaps <= 5) {
    // full heap-permutation group; actions map heap-wise
    for (const auto& p : all_permutations(heaps)) {
      std::array<std::uint8_t, kMaxCells> perm{};
      std::vector<std::int16_t> amap(static_cast<std::size_t>(num_actions_));
      for (int hidx = 0; hidx < heaps; ++hidx) {
        perm[static_cast<std::size_t>(hidx)] = static_cast<std::uint8_t>(p[static_cast<std::size_t>(hidx)]);
        for (int c = 0; c < stones; ++c)
          amap[static_cast<std::size_t>(hidx * stones + c)] =
              static_cast<std::int16_t>(p[static_cast<std::size_t>(hidx)] * stones + c);
      }
      add_symmetry({perm.data(), static_cast<std::size_t>(heaps)}, amap);
    }
  } else {
    add_identity_symmetry();
  }
}

GameState Nim::initial_state(Rng&) const {
  GameState s = blank_state();
  for (int h = 0; h < spec_.heaps; ++h)
    s.cells[static_cast<std::size_t>(h)] = static_cast<std::uint8_t>(spec_.stones);
  return s;
}

void Nim::legal_actions(const GameState& s, std::vector<ActionId>& out) const {
  out.clear();
  for (int h = 0; h < spec_.heaps; ++h)
    for (int c = 0; c < s.cells[static_cast<std::size_t>(h)]; ++c)
      out.push_back(ActionId(h * spec_.stones + c));
}

GameState Nim::compute_afterstate(const GameState& s, ActionId a) const {
  if (a.value() < 0 || a.value() >= num_actions_) illegal_action(s, a, "action out of range");
  const int heap = heap_of(a);
  const int take = count_of(a);
  if (take > s.cells[static_cast<std::size_t>(heap)])
    illegal_action(s, a, "not enough stones in heap");
  GameState out = s;
  out.cells[static_cast<std::size_t>(heap)] = static_cast<std::uint8_t>(s.cells[static_cast<std::size_t>(heap)] - take);
  out.move_counter = static_cast<std::int16_t>(s.move_counter + 1);
  const int mover = s.player_to_move;
  out.player_to_move = static_cast<std::int8_t>((mover + 1) % num_players_);
  int remaining = 0;
  for (int h = 0; h < spec_.heaps; ++h) remaining += out.cells[static_cast<std::size_t>(h)];
  if (remaining == 0) {
    out.terminal = true;
    if (num_players_ == 2) {
      out.scores[static_cast<std::size_t>(mover)] = 0.0;
      out.scores[static_cast<std::size_t>(1 - mover)] = 1.0;
    } else {
      out.scores[static_cast<std::size_t>(mover)] = 0.0;
      out.scores[static_cast<std::size_t>((mover + 1) % 3)] = 1.0;  // successor wins
      out.scores[static_cast<std::size_t>((mover + 2) % 3)] = 0.2;  // predecessor
    }
  }
  return out;
}

std::string Nim::render_line(const GameState& s) const {
  std::string out;
  for (int h = 0; h < spec_.heaps; ++h) {
    if (h) out += ',';
    out += std::to_string(static_cast<int>(s.cells[static_cast<std::size_t>(h)]));
  }
  return out;
}

std::string Nim::render(const GameState& s) const {
  std::ostringstream os;
  for (int h = 0; h < spec_.heaps; ++h) {
    os << "heap " << h << ": ";
    for (int i = 0; i < s.cells[static_cast<std::size_t>(h)]; ++i) os << '|';
    os << " (" << static_cast<int>(s.cells[static_cast<std::size_t>(h)]) << ")\n";
  }
  return os.str();
}

std::string Nim::action_name(ActionId a) const {
  return "heap " + std::to_string(heap_of(a)) + " take " + std::to_string(count_of(a));
}

}  // namespace farl::games
