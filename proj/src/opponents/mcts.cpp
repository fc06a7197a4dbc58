#include "farl/opponents/mcts.hpp"

#include <limits>
#include <stdexcept>

namespace farl::opponents {

namespace {

struct Node {
  GameState state;
  RewardTuple edge_reward;  // delta rewards of the move leading here
  std::int32_t parent = -1;
  std::int32_t first_child = -1;  // -1 until children are allocated
  std::int32_t num_children = 0;
  std::int32_t num_expanded = 0;
  std::int64_t visits = 0;
  ActionId action;  // move from parent
  std::array<double, kMaxPlayers> value_sum{};  // rewards collected after this node
};

struct Tree {
  const Game& game;
  std::vector<Node> nodes;
  std::vector<ActionId> scratch_actions;

  void add(const GameState& s, int parent, ActionId a, const RewardTuple& edge) {
    Node n;
    n.state = s;
    n.parent = parent;
    n.action = a;
    n.edge_reward = edge;
    nodes.push_back(std::move(n));
  }

  void ensure_children(int id, Rng& rng) {
    if (nodes[static_cast<std::size_t>(id)].first_child >= 0) return;
    game.legal_actions(nodes[static_cast<std::size_t>(id)].state, scratch_actions);
    const int first = static_cast<int>(nodes.size());
    const int count = static_cast<int>(scratch_actions.size());
    for (const ActionId a : scratch_actions) {
      const Transition tr = make_action(game, nodes[static_cast<std::size_t>(id)].state, a, true, rng);
      add(tr.next_state, id, a, tr.rewards);
    }
    nodes[static_cast<std::size_t>(id)].first_child = first;
    nodes[static_cast<std::size_t>(id)].num_children = count;
  }

  // mean reward of entering child c, from player p's perspective
  double child_mean(const Node& c, int p) const {
    return (c.edge_reward[p] * static_cast<double>(c.visits) + c.value_sum[static_cast<std::size_t>(p)]) /
           static_cast<double>(c.visits);
  }
};

// uniform random playout; returns the reward sum per player
RewardTuple rollout(const Game& game, GameState s, int depth_cap, Rng& rng,
                    std::vector<ActionId>& actions) {
  RewardTuple total;
  total.n = game.num_players();
  int steps = 0;
  while (!s.terminal && (depth_cap < 0 || steps < depth_cap)) {
    game.legal_actions(s, actions);
    const ActionId a = actions[static_cast<std::size_t>(rng.below(static_cast<int>(actions.size())))];
    const Transition tr = make_action(game, s, a, true, rng);
    total += tr.rewards;
    s = tr.next_state;
    ++steps;
  }
  return total;
}

}  // namespace

ActionId mcts_search_stats(const Game& game, const GameState& s, const MctsParams& params, Rng& rng,
                           MctsRootStats* stats) {
  if (s.terminal) throw std::logic_error("mcts_search called on a terminal state");
  if (params.iterations < 1) throw std::invalid_argument("mcts_search needs iterations >= 1");

  Tree tree{game};
  tree.nodes.reserve(static_cast<std::size_t>(params.iterations) * 2 + 64);
  tree.add(s, -1, ActionId(), RewardTuple{});
  std::vector<ActionId> rollout_actions;
  std::vector<int> path;

  for (int it = 0; it < params.iterations; ++it) {
    // selection: descend fully expanded nodes by UCT
    path.clear();
    int id = 0;
    for (;;) {
      path.push_back(id);
      if (tree.nodes[static_cast<std::size_t>(id)].state.terminal) break;
      tree.ensure_children(id, rng);
      const Node& n = tree.nodes[static_cast<std::size_t>(id)];
      if (n.num_expanded < n.num_children) break;
      const int mover = n.state.player_to_move;
      const double logn = std::log(static_cast<double>(n.visits));
      double best = -std::numeric_limits<double>::infinity();
      int best_child = n.first_child;
      for (int k = 0; k < n.num_children; ++k) {
        const Node& c = tree.nodes[static_cast<std::size_t>(n.first_child + k)];
        const double uct =
            tree.child_mean(c, mover) + params.exploration * std::sqrt(logn / static_cast<double>(c.visits));
        if (uct > best) {
          best = uct;
          best_child = n.first_child + k;
        }
      }
      id = best_child;
    }

    // expansion + rollout; `future` = rewards after the deepest path node
    RewardTuple future;
    future.n = game.num_players();
    if (!tree.nodes[static_cast<std::size_t>(id)].state.terminal) {
      const int child = tree.nodes[static_cast<std::size_t>(id)].first_child +
                        tree.nodes[static_cast<std::size_t>(id)].num_expanded;
      ++tree.nodes[static_cast<std::size_t>(id)].num_expanded;
      path.push_back(child);
      const Node& cnode = tree.nodes[static_cast<std::size_t>(child)];
      if (!cnode.state.terminal)
        future = rollout(game, cnode.state, params.rollout_depth_cap, rng, rollout_actions);
    }

    // backup bottom-up; each node's edge reward joins `future` when
    // stepping to its parent
    for (int i = static_cast<int>(path.size()) - 1; i >= 0; --i) {
      Node& n = tree.nodes[static_cast<std::size_t>(path[static_cast<std::size_t>(i)])];
      ++n.visits;
      for (int p = 0; p < future.n; ++p) n.value_sum[static_cast<std::size_t>(p)] += future[p];
      future += n.edge_reward;
    }
  }

  // most-visited root action
  const Node& root = tree.nodes[0];
  std::int64_t best_visits = -1;
  for (int k = 0; k < root.num_children; ++k)
    best_visits = std::max(best_visits, tree.nodes[static_cast<std::size_t>(root.first_child + k)].visits);
  std::vector<int> arg;
  for (int k = 0; k < root.num_children; ++k)
    if (tree.nodes[static_cast<std::size_t>(root.first_child + k)].visits == best_visits) arg.push_back(k);
  const int pick =
      arg.size() == 1 ? arg[0] : arg[static_cast<std::size_t>(rng.below(static_cast<int>(arg.size())))];

  if (stats) {
    stats->actions.clear();
    stats->visits.clear();
    stats->mean_reward.clear();
    const int mover = root.state.player_to_move;
    for (int k = 0; k < root.num_children; ++k) {
      const Node& c = tree.nodes[static_cast<std::size_t>(root.first_child + k)];
      stats->actions.push_back(c.action);
      stats->visits.push_back(c.visits);
      stats->mean_reward.push_back(c.visits == 0 ? 0.0 : tree.child_mean(c, mover));
    }
  }
  return tree.nodes[static_cast<std::size_t>(root.first_child + pick)].action;
}

ActionId mcts_search(const Game& game, const GameState& s, const MctsParams& params, Rng& rng) {
  return mcts_search_stats(game, s, params, rng, nullptr);
}

}  // namespace farl::opponents
