#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>

namespace farl {

// Upper bounds shared by all games (Othello 8x8 is the largest board,
// Nim3P the largest player count).
inline constexpr int kMaxCells = 64;
inline constexpr int kMaxPlayers = 3;

// A move in a game's fixed global action alphabet. The same id always
// denotes the same abstract move in every state of one game, so it can
// index per-action weight tables.
struct ActionId {
  std::int16_t v = -1;

  constexpr ActionId() = default;
  constexpr explicit ActionId(int id) : v(static_cast<std::int16_t>(id)) {}
  constexpr int value() const { return v; }
  constexpr bool valid() const { return v >= 0; }

  friend constexpr auto operator<=>(ActionId, ActionId) = default;
};

// Flat board snapshot plus whose turn it is. Cell values live in
// 0..P-1 where P is the game's cell alphabet. `scores` holds the
// cumulative per-player reward, so reward deltas of a transition are
// score differences between its endpoints.
struct GameState {
  std::array<std::uint8_t, kMaxCells> cells{};
  std::array<double, kMaxPlayers> scores{};
  std::uint8_t num_cells = 0;
  std::int8_t player_to_move = 0;
  bool terminal = false;
  std::int16_t move_counter = 0;

  std::span<const std::uint8_t> board() const { return {cells.data(), num_cells}; }

  friend bool operator==(const GameState& a, const GameState& b) {
    return a.num_cells == b.num_cells && a.player_to_move == b.player_to_move &&
           a.terminal == b.terminal && a.move_counter == b.move_counter &&
           a.scores == b.scores &&
           std::memcmp(a.cells.data(), b.cells.data(), a.num_cells) == 0;
  }
};

// Board-only ordering helpers, used for symmetry-orbit deduplication
// (orbit members share player/terminal flags but not necessarily
// counters or scores).
inline bool cells_equal(const GameState& a, const GameState& b) {
  return a.num_cells == b.num_cells &&
         std::memcmp(a.cells.data(), b.cells.data(), a.num_cells) == 0;
}

inline bool cells_less(const GameState& a, const GameState& b) {
  const int r = std::memcmp(a.cells.data(), b.cells.data(), a.num_cells);
  return r < 0;
}

// FNV-1a over the play-relevant part of a state.
inline std::uint64_t state_hash(const GameState& s) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  for (int i = 0; i < s.num_cells; ++i) mix(s.cells[i]);
  mix(static_cast<std::uint8_t>(s.player_to_move));
  mix(s.terminal ? 1 : 0);
  return h;
}

// One reward value per player, in game-score units. For transitions it
// holds deltas; at terminal states the deltas coincide with the final
// outcome because intermediate rewards of the board games are zero.
struct RewardTuple {
  std::array<double, kMaxPlayers> v{};
  int n = 0;

  double& operator[](int p) { return v[static_cast<std::size_t>(p)]; }
  double operator[](int p) const { return v[static_cast<std::size_t>(p)]; }

  RewardTuple& operator+=(const RewardTuple& o) {
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] += o.v[static_cast<std::size_t>(i)];
    return *this;
  }
  double sum() const {
    double t = 0;
    for (int i = 0; i < n; ++i) t += v[static_cast<std::size_t>(i)];
    return t;
  }
  friend bool operator==(const RewardTuple& a, const RewardTuple& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; ++i)
      if (a.v[static_cast<std::size_t>(i)] != b.v[static_cast<std::size_t>(i)]) return false;
    return true;
  }
};

// Result of taking an action: the deterministic afterstate, the next
// state after the environment's random part, and the per-player reward
// deltas of the whole transition. Deterministic games have
// afterstate == next_state bit for bit.
struct Transition {
  RewardTuple rewards;
  GameState afterstate;
  GameState next_state;
};

enum class GameName : std::uint8_t {
  tictactoe = 0,
  nim = 1,
  nim3p = 2,
  connect_four = 3,
  hex = 4,
  othello = 5,
  g2048 = 6,
};

const char* to_string(GameName n);

// Which of the seven games to build, with the sizes that vary.
struct GameSpec {
  GameName name = GameName::tictactoe;
  int heaps = 3;       // Nim / Nim3P
  int stones = 5;      // Nim / Nim3P
  int hex_size = 6;    // Hex board side

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

std::string to_string(const GameSpec& spec);

}  // namespace farl
