#include "farl/opponents/max_n.hpp"

#include <cstring>
#include <stdexcept>

namespace farl::opponents {

namespace {

RewardTuple heuristic_tuple(int players) {
  RewardTuple r;
  r.n = players;
  const double share = players == 2 ? 0.5 : 0.4;
  for (int p = 0; p < players; ++p) r[p] = share;
  return r;
}

// Canonical form of a state under the game's symmetry group: the
// lexicographically smallest permuted board. Siblings with the same
// canonical form have identical subtree values, so each is searched
// only once. This is per-node sibling folding, not a transposition
// table: nothing is shared across nodes or calls.
struct CanonChild {
  std::array<std::uint8_t, kMaxCells> cells;
  std::array<double, kMaxPlayers> scores;
  std::int8_t player;
  bool terminal;
};

void canonicalize(const Game& g, const GameState& s, CanonChild& out) {
  const int n = g.num_cells();
  const int nsym = g.num_symmetries();
  out.scores = s.scores;
  out.player = s.player_to_move;
  out.terminal = s.terminal;
  std::array<std::uint8_t, kMaxCells> tmp{};
  for (int k = 0; k < nsym; ++k) {
    const auto perm = g.cell_perm(k);
    for (int c = 0; c < n; ++c) tmp[perm[static_cast<std::size_t>(c)]] = s.cells[static_cast<std::size_t>(c)];
    if (k == 0 || std::memcmp(tmp.data(), out.cells.data(), static_cast<std::size_t>(n)) < 0)
      out.cells = tmp;
  }
}

bool same_child(const CanonChild& a, const CanonChild& b, int n) {
  return a.player == b.player && a.terminal == b.terminal &&
         std::memcmp(a.cells.data(), b.cells.data(), static_cast<std::size_t>(n)) == 0 &&
         a.scores == b.scores;
}

// per-depth scratch buffers so the recursion does not allocate
struct Frame {
  std::vector<ActionId> actions;
  std::vector<CanonChild> seen;
};

struct Searcher {
  const Game& game;
  std::uint64_t nodes = 0;
  Rng dummy{0};
  std::vector<Frame> frames;

  explicit Searcher(const Game& g) : game(g) {}

  // future rewards from non-terminal s with `depth` plies left
  RewardTuple value(const GameState& s, int depth) {
    ++nodes;
    if (depth == 0) return heuristic_tuple(game.num_players());
    Frame& f = frame_at(depth);
    game.legal_actions(s, f.actions);
    const int mover = s.player_to_move;
    RewardTuple best;
    bool have = false;
    f.seen.clear();
    CanonChild canon;
    const int players = game.num_players();
    for (const ActionId a : f.actions) {
      // deterministic games only: the afterstate is the next state
      const GameState child = game.compute_afterstate(s, a);
      canonicalize(game, child, canon);
      bool dup = false;
      for (const auto& q : f.seen)
        if (same_child(q, canon, game.num_cells())) {
          dup = true;
          break;
        }
      if (dup) continue;
      f.seen.push_back(canon);
      RewardTuple total;
      total.n = players;
      for (int p = 0; p < players; ++p)
        total[p] = child.scores[static_cast<std::size_t>(p)] - s.scores[static_cast<std::size_t>(p)];
      if (!child.terminal) total += value(child, depth - 1);
      if (!have || total[mover] > best[mover]) {
        best = total;
        have = true;
      }
    }
    return best;
  }

  Frame& frame_at(int depth) {
    if (static_cast<int>(frames.size()) <= depth) frames.resize(static_cast<std::size_t>(depth) + 1);
    return frames[static_cast<std::size_t>(depth)];
  }
};

}  // namespace

MaxNResult max_n_search(const Game& game, const GameState& s, int depth, Rng& rng) {
  if (s.terminal) throw std::logic_error("max_n_search called on a terminal state");
  if (depth < 1) throw std::invalid_argument("max_n_search needs depth >= 1");
  if (game.stochastic())
    throw std::invalid_argument("max_n_search supports deterministic games only");

  Searcher searcher(game);
  std::vector<ActionId> actions;
  game.legal_actions(s, actions);
  const int mover = s.player_to_move;

  // evaluate each distinct child once but keep per-action values so
  // root tie-breaking is uniform over all maximizing actions
  std::vector<CanonChild> seen;
  std::vector<RewardTuple> seen_value;
  std::vector<RewardTuple> totals(actions.size());
  ++searcher.nodes;
  CanonChild canon;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const Transition tr = make_action(game, s, actions[i], true, searcher.dummy);
    canonicalize(game, tr.next_state, canon);
    int found = -1;
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (same_child(seen[k], canon, game.num_cells())) {
        found = static_cast<int>(k);
        break;
      }
    RewardTuple total;
    if (found >= 0) {
      total = seen_value[static_cast<std::size_t>(found)];
    } else {
      total = tr.rewards;
      if (!tr.next_state.terminal) total += searcher.value(tr.next_state, depth - 1);
      seen.push_back(canon);
      seen_value.push_back(total);
    }
    totals[i] = total;
  }

  double best = totals[0][mover];
  for (const auto& t : totals)
    if (t[mover] > best) best = t[mover];
  std::vector<int> arg;
  for (std::size_t i = 0; i < totals.size(); ++i)
    if (totals[i][mover] == best) arg.push_back(static_cast<int>(i));
  const int pick =
      arg.size() == 1 ? arg[0] : arg[static_cast<std::size_t>(rng.below(static_cast<int>(arg.size())))];

  return MaxNResult{actions[static_cast<std::size_t>(pick)], totals[static_cast<std::size_t>(pick)],
                    searcher.nodes};
}

}  // namespace farl::opponents
