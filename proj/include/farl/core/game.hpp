#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "farl/core/rng.hpp"
#include "farl/core/types.hpp"

namespace farl {

// Symmetry orbit S(s) of a state: every distinct board obtainable by
// the game's symmetry group, including s itself, sorted by board
// content so orbit enumeration order is canonical. `action_maps`
// (present on request, stride = game action alphabet) gives for each
// orbit member the action that corresponds to playing `a` in s.
struct SymmetrySet {
  std::vector<GameState> states;
  std::vector<std::int16_t> action_maps;
  int action_stride = 0;

  int size() const { return static_cast<int>(states.size()); }
  bool has_action_maps() const { return action_stride > 0; }
  std::span<const std::int16_t> action_map(int k) const {
    return {action_maps.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(action_stride),
            static_cast<std::size_t>(action_stride)};
  }
  void clear() {
    states.clear();
    action_maps.clear();
    action_stride = 0;
  }
};

// Rule bundle of one game. Stateless and shareable; all randomness
// (2048 tile spawns, random initial boards) flows through caller
// supplied streams. Symmetries are cell permutations: the k-th
// transform places the content of cell c at cell_perm(k)[c].
class Game {
 public:
  virtual ~Game() = default;

  const GameSpec& spec() const { return spec_; }
  int num_players() const { return num_players_; }
  int num_cells() const { return num_cells_; }
  int cell_alphabet() const { return cell_alphabet_; }   // P
  int num_actions() const { return num_actions_; }       // N_a
  int num_symmetries() const { return static_cast<int>(cell_perms_.size()); }
  virtual bool stochastic() const { return false; }

  virtual GameState initial_state(Rng& rng) const = 0;

  // Legal moves of a non-terminal state (never empty).
  virtual void legal_actions(const GameState& s, std::vector<ActionId>& out) const = 0;

  // Deterministic part of an action; throws std::invalid_argument on an
  // illegal move, naming action and state.
  virtual GameState compute_afterstate(const GameState& s, ActionId a) const = 0;

  // Environment's random part; identity for deterministic games.
  virtual GameState add_random_part(const GameState& afterstate, Rng& /*rng*/) const;

  std::span<const std::uint8_t> cell_perm(int k) const {
    return {cell_perms_[static_cast<std::size_t>(k)].data(), static_cast<std::size_t>(num_cells_)};
  }
  std::span<const std::int16_t> symmetry_action_map(int k) const {
    return {action_maps_[static_cast<std::size_t>(k)].data(), action_maps_[static_cast<std::size_t>(k)].size()};
  }

  // Reward range per player, used by the optional target normalization.
  virtual double min_reward() const { return 0.0; }
  virtual double max_reward() const { return 1.0; }
  virtual bool reward_bounded() const { return true; }

  // Board text: one-line canonical form and a multi-line picture.
  virtual std::string render_line(const GameState& s) const = 0;
  virtual std::string render(const GameState& s) const = 0;
  // Human-readable name of an action, e.g. "c4" or "heap 2 take 3".
  virtual std::string action_name(ActionId a) const;

 protected:
  Game(GameSpec spec, int num_players, int num_cells, int cell_alphabet, int num_actions)
      : spec_(spec),
        num_players_(num_players),
        num_cells_(num_cells),
        cell_alphabet_(cell_alphabet),
        num_actions_(num_actions) {}

  // Register the identity transform plus any further ones.
  void add_symmetry(std::span<const std::uint8_t> perm, std::span<const std::int16_t> amap);
  void add_identity_symmetry();

  GameState blank_state() const;
  [[noreturn]] void illegal_action(const GameState& s, ActionId a, const char* why) const;

  GameSpec spec_;
  int num_players_;
  int num_cells_;
  int cell_alphabet_;
  int num_actions_;
  std::vector<std::array<std::uint8_t, kMaxCells>> cell_perms_;
  std::vector<std::vector<std::int16_t>> action_maps_;
};

// A move selector: trained agents and the reference opponents share
// this contract so the evaluation harness can seat them uniformly.
class MovePolicy {
 public:
  virtual ~MovePolicy() = default;
  virtual ActionId select(const Game& game, const GameState& s, Rng& rng) = 0;
  virtual std::string name() const = 0;
};

// ---- Spec operations over the rule bundle ----

// Legal actions with the non-terminal precondition enforced.
std::vector<ActionId> legal_actions(const Game& g, const GameState& s);
void legal_actions(const Game& g, const GameState& s, std::vector<ActionId>& out);

// Take action a in s: afterstate, next state and delta reward tuple.
// With t_after = false the returned afterstate is replaced by the next
// state, so learners configured that way only ever see next states.
Transition make_action(const Game& g, const GameState& s, ActionId a, bool t_after, Rng& rng);

// Per-player reward deltas between two states of one episode.
RewardTuple reward_tuple(const Game& g, const GameState& prev, const GameState& next);

// Symmetry orbit of s. With use_symmetry = false this is the singleton
// {s}. `out` buffers are reused across calls.
void symmetric_states(const Game& g, const GameState& s, bool use_symmetry, bool want_action_maps,
                      SymmetrySet& out);
SymmetrySet symmetric_states(const Game& g, const GameState& s, bool use_symmetry = true,
                             bool want_action_maps = false);

}  // namespace farl
