#include "farl/games/oracle.hpp"

#include <cstring>
#include <stdexcept>

namespace farl::games {

bool GameOracle::Key::operator==(const Key& o) const {
  return num_cells == o.num_cells && player == o.player &&
         std::memcmp(cells.data(), o.cells.data(), num_cells) == 0;
}

std::size_t GameOracle::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = 1469598103934665603ull;
  for (int i = 0; i < k.num_cells; ++i) {
    h ^= k.cells[static_cast<std::size_t>(i)];
    h *= 1099511628211ull;
  }
  h ^= static_cast<std::uint8_t>(k.player);
  h *= 1099511628211ull;
  return static_cast<std::size_t>(h);
}

GameOracle::GameOracle(const Game& game, std::uint64_t node_budget)
    : game_(game), budget_(node_budget) {
  if (game.stochastic())
    throw std::invalid_argument("game oracle supports deterministic games only");
}

// expected future rewards from s (s itself non-terminal)
RewardTuple GameOracle::future_value(const GameState& s) {
  Key key{s.cells, s.num_cells, s.player_to_move};
  if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (++nodes_ > budget_) throw std::runtime_error("game oracle: node budget exceeded");

  Rng dummy(0);
  std::vector<ActionId> actions;
  game_.legal_actions(s, actions);
  RewardTuple best;
  bool have_best = false;
  const int mover = s.player_to_move;
  for (const ActionId a : actions) {
    const Transition tr = make_action(game_, s, a, true, dummy);
    RewardTuple total = tr.rewards;
    if (!tr.next_state.terminal) total += future_value(tr.next_state);
    if (!have_best || total[mover] > best[mover]) {
      best = total;
      have_best = true;
    }
  }
  memo_.emplace(key, best);
  return best;
}

RewardTuple GameOracle::value(const GameState& s) {
  if (s.terminal) {
    RewardTuple r;
    r.n = game_.num_players();
    return r;
  }
  return future_value(s);
}

RewardTuple game_oracle_value(const Game& game, const GameState& s, std::uint64_t node_budget) {
  GameOracle oracle(game, node_budget);
  return oracle.value(s);
}

}  // namespace farl::games
