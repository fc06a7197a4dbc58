#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>

#include "farl/core/game.hpp"

namespace farl::games {

// Exact perfect-play reward tuple of a state, by exhaustive expansion
// of the full game tree with memoization on (board, player to move).
// Only meant for small deterministic games (TicTacToe, Nim/Nim3P up to
// 3x5); throws std::runtime_error once more than `node_budget` states
// have been expanded.
class GameOracle {
 public:
  explicit GameOracle(const Game& game, std::uint64_t node_budget = 50'000'000);

  RewardTuple value(const GameState& s);
  std::uint64_t nodes_expanded() const { return nodes_; }

 private:
  const Game& game_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  // memo: state key -> future reward tuple
  struct Key {
    std::array<std::uint8_t, kMaxCells> cells;
    std::uint8_t num_cells;
    std::int8_t player;
    bool operator==(const Key&) const;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  std::unordered_map<Key, RewardTuple, KeyHash> memo_;

  RewardTuple future_value(const GameState& s);
};

RewardTuple game_oracle_value(const Game& game, const GameState& s,
                              std::uint64_t node_budget = 50'000'000);

}  // namespace farl::games
