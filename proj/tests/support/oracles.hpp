#pragma once

// Test-only reference implementations, kept independent of the library
// paths they are used to check.

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "farl/core/game.hpp"
#include "farl/ntuple/network.hpp"

namespace farl::test_support {

// Orbit of a state computed directly from the game's permutation
// tables, deduplicated through an ordered set of boards.
inline std::vector<GameState> orbit_of(const Game& g, const GameState& s) {
  std::map<std::vector<std::uint8_t>, GameState> members;
  for (int k = 0; k < g.num_symmetries(); ++k) {
    GameState q = s;
    const auto perm = g.cell_perm(k);
    for (int c = 0; c < g.num_cells(); ++c)
      q.cells[perm[static_cast<std::size_t>(c)]] = s.cells[static_cast<std::size_t>(c)];
    std::vector<std::uint8_t> key(q.cells.begin(), q.cells.begin() + q.num_cells);
    members.emplace(std::move(key), q);
  }
  std::vector<GameState> out;
  for (auto& [key, q] : members) out.push_back(q);
  return out;
}

// Accumulating (replacing-free) eligibility realization of the
// TD(lambda) weight update for a linear value net (sigma = identity,
// TCL off): on the t-th update every past state k of the episode
// contributes alpha * delta_t * lambda^(t-k) times its scaled
// gradient. Indices are recomputed here with plain positional
// arithmetic; each tuple index contributes once per state.
class Eq1Reference {
 public:
  Eq1Reference(const Game& g, std::vector<std::vector<int>> tuples, int alphabet, double lambda,
               bool use_symmetry)
      : game_(g), tuples_(std::move(tuples)), alphabet_(alphabet), lambda_(lambda),
        use_symmetry_(use_symmetry) {}

  void observe_state(const GameState& after) { trace_.push_back(after); }

  void update(double delta, double alpha) {
    const int t = static_cast<int>(trace_.size()) - 1;
    double decay = 1.0;
    for (int k = t; k >= 0; --k) {
      apply_state(trace_[static_cast<std::size_t>(k)], alpha * delta * decay);
      decay *= lambda_;
    }
  }

  double weight(int tuple, std::uint64_t index) const {
    const auto it = weights_.find({tuple, index});
    return it == weights_.end() ? 0.0 : it->second;
  }

  const std::map<std::pair<int, std::uint64_t>, double>& weights() const { return weights_; }

 private:
  void apply_state(const GameState& s, double scale) {
    const auto orbit = use_symmetry_ ? orbit_of(game_, s) : std::vector<GameState>{s};
    const double ns = static_cast<double>(orbit.size());
    const double m = static_cast<double>(tuples_.size());
    for (int i = 0; i < static_cast<int>(tuples_.size()); ++i) {
      std::set<std::uint64_t> seen;
      for (const auto& q : orbit) {
        std::uint64_t idx = 0, pw = 1;
        for (const int c : tuples_[static_cast<std::size_t>(i)]) {
          idx += q.cells[static_cast<std::size_t>(c)] * pw;
          pw *= static_cast<std::uint64_t>(alphabet_);
        }
        if (!seen.insert(idx).second) continue;
        weights_[{i, idx}] += scale / (m * ns);
      }
    }
  }

  const Game& game_;
  std::vector<std::vector<int>> tuples_;
  int alphabet_;
  double lambda_;
  bool use_symmetry_;
  std::vector<GameState> trace_;
  std::map<std::pair<int, std::uint64_t>, double> weights_;
};

}  // namespace farl::test_support
