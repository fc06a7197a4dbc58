#include "farl/opponents/random_player.hpp"

namespace farl::opponents {

ActionId random_player(const Game& game, const GameState& s, Rng& rng) {
  const auto actions = legal_actions(game, s);
  return actions[static_cast<std::size_t>(rng.below(static_cast<int>(actions.size())))];
}

}  // namespace farl::opponents
