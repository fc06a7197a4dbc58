#include "farl/core/game.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace farl {

const char* to_string(GameName n) {
  switch (n) {
    case GameName::tictactoe: return "tictactoe";
    case GameName::nim: return "nim";
    case GameName::nim3p: return "nim3p";
    case GameName::connect_four: return "connectfour";
    case GameName::hex: return "hex";
    case GameName::othello: return "othello";
    case GameName::g2048: return "2048";
  }
  return "?";
}

std::string to_string(const GameSpec& spec) {
  std::ostringstream os;
  os << to_string(spec.name);
  switch (spec.name) {
    case GameName::nim:
    case GameName::nim3p:
      os << " " << spec.heaps << "x" << spec.stones;
      break;
    case GameName::hex:
      os << " " << spec.hex_size << "x" << spec.hex_size;
      break;
    default:
      break;
  }
  return os.str();
}

GameState Game::add_random_part(const GameState& afterstate, Rng&) const { return afterstate; }

std::string Game::action_name(ActionId a) const { return std::to_string(a.value()); }

void Game::add_symmetry(std::span<const std::uint8_t> perm, std::span<const std::int16_t> amap) {
  assert(static_cast<int>(perm.size()) == num_cells_);
  assert(static_cast<int>(amap.size()) == num_actions_);
  std::array<std::uint8_t, kMaxCells> p{};
  std::copy(perm.begin(), perm.end(), p.begin());
  cell_perms_.push_back(p);
  action_maps_.emplace_back(amap.begin(), amap.end());
}

void Game::add_identity_symmetry() {
  std::array<std::uint8_t, kMaxCells> p{};
  for (int i = 0; i < num_cells_; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  std::vector<std::int16_t> amap(static_cast<std::size_t>(num_actions_));
  std::iota(amap.begin(), amap.end(), std::int16_t{0});
  add_symmetry({p.data(), static_cast<std::size_t>(num_cells_)}, amap);
}

GameState Game::blank_state() const {
  GameState s;
  s.num_cells = static_cast<std::uint8_t>(num_cells_);
  return s;
}

void Game::illegal_action(const GameState& s, ActionId a, const char* why) const {
  std::ostringstream os;
  os << "illegal action " << a.value() << " (" << action_name(a) << ") in " << to_string(spec_)
     << " state [" << render_line(s) << "]: " << why;
  throw std::invalid_argument(os.str());
}

std::vector<ActionId> legal_actions(const Game& g, const GameState& s) {
  std::vector<ActionId> out;
  legal_actions(g, s, out);
  return out;
}

void legal_actions(const Game& g, const GameState& s, std::vector<ActionId>& out) {
  if (s.terminal)
    throw std::logic_error("legal_actions called on a terminal state of " + to_string(g.spec()));
  g.legal_actions(s, out);
  assert(!out.empty());
}

Transition make_action(const Game& g, const GameState& s, ActionId a, bool t_after, Rng& rng) {
  Transition tr;
  tr.afterstate = g.compute_afterstate(s, a);
  if (g.stochastic() && !tr.afterstate.terminal) {
    tr.next_state = g.add_random_part(tr.afterstate, rng);
  } else {
    tr.next_state = tr.afterstate;
  }
  tr.rewards = reward_tuple(g, s, tr.next_state);
  if (!t_after) tr.afterstate = tr.next_state;
  return tr;
}

RewardTuple reward_tuple(const Game& g, const GameState& prev, const GameState& next) {
  RewardTuple r;
  r.n = g.num_players();
  for (int p = 0; p < r.n; ++p)
    r[p] = next.scores[static_cast<std::size_t>(p)] - prev.scores[static_cast<std::size_t>(p)];
  return r;
}

namespace {

// Insert the k-th transform of s into the orbit unless the board is
// already present. Linear scan: orbits have at most a few dozen
// members and states compare by memcmp.
void apply_perm(const Game& g, const GameState& s, int k, GameState& out) {
  out = s;
  const auto perm = g.cell_perm(k);
  for (int c = 0; c < static_cast<int>(perm.size()); ++c)
    out.cells[perm[static_cast<std::size_t>(c)]] = s.cells[static_cast<std::size_t>(c)];
}

}  // namespace

void symmetric_states(const Game& g, const GameState& s, bool use_symmetry, bool want_action_maps,
                      SymmetrySet& out) {
  out.clear();
  if (want_action_maps) out.action_stride = g.num_actions();

  if (!use_symmetry) {
    out.states.push_back(s);
    if (want_action_maps) {
      const auto id = g.symmetry_action_map(0);
      out.action_maps.assign(id.begin(), id.end());
    }
    return;
  }

  const int nsym = g.num_symmetries();
  assert(nsym <= 128);
  GameState scratch;
  std::array<int, 128> kept{};  // transform index per distinct orbit member
  int nkept = 0;
  for (int k = 0; k < nsym; ++k) {
    apply_perm(g, s, k, scratch);
    // keep orbit sorted by board content; dedup on insert
    int lo = 0, hi = nkept;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (cells_less(out.states[static_cast<std::size_t>(mid)], scratch))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < nkept && cells_equal(out.states[static_cast<std::size_t>(lo)], scratch)) continue;
    out.states.insert(out.states.begin() + lo, scratch);
    for (int i = nkept; i > lo; --i) kept[static_cast<std::size_t>(i)] = kept[static_cast<std::size_t>(i - 1)];
    kept[static_cast<std::size_t>(lo)] = k;
    ++nkept;
  }
  if (want_action_maps) {
    out.action_maps.resize(static_cast<std::size_t>(nkept) * static_cast<std::size_t>(out.action_stride));
    for (int i = 0; i < nkept; ++i) {
      const auto amap = g.symmetry_action_map(kept[static_cast<std::size_t>(i)]);
      std::copy(amap.begin(), amap.end(),
                out.action_maps.begin() + static_cast<std::ptrdiff_t>(i) * out.action_stride);
    }
  }
}

SymmetrySet symmetric_states(const Game& g, const GameState& s, bool use_symmetry, bool want_action_maps) {
  SymmetrySet out;
  symmetric_states(g, s, use_symmetry, want_action_maps, out);
  return out;
}

}  // namespace farl
