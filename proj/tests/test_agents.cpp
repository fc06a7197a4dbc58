#include <cmath>

#include "doctest.h"
#include "farl/agents/episode.hpp"
#include "farl/agents/train.hpp"
#include "farl/games/factory.hpp"
#include "farl/games/ntuple_presets.hpp"
#include "farl/ntuple/serialize.hpp"

using namespace farl;
using agents::AgentParams;
using agents::Algorithm;
using agents::Chosen;
using agents::EpisodeContext;
using agents::UpdateEvent;
using ntuple::NetMode;
using ntuple::NTupleNetwork;
using ntuple::Sigma;

namespace {

NTupleNetwork make_net(const Game& g, NetMode mode, Sigma sigma = Sigma::identity,
                       ntuple::TclConfig tcl = {}) {
  return NTupleNetwork(mode, games::default_tuples(g, 7), g.cell_alphabet(), g.num_actions(),
                       sigma, tcl);
}

struct EventLog {
  std::vector<UpdateEvent> events;
  agents::EventSink sink = [this](const UpdateEvent& e) { events.push_back(e); };

  int count(UpdateEvent::Kind kind) const {
    int n = 0;
    for (const auto& e : events) n += e.kind == kind;
    return n;
  }
};

bool same_events(const std::vector<UpdateEvent>& a, const std::vector<UpdateEvent>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].kind != b[i].kind || a[i].player != b[i].player ||
        a[i].move_index != b[i].move_index || a[i].state_hash != b[i].state_hash ||
        a[i].target != b[i].target || a[i].delta != b[i].delta)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("choose_action_td") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});
  Rng rng(1);
  agents::PolicyWork work;

  SUBCASE("epsilon = 1 is uniform over legal actions") {
    auto net = make_net(*g, NetMode::value_net);
    const GameState s = g->initial_state(rng);
    std::array<int, 9> counts{};
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      const Chosen c = agents::choose_action_td(*g, net, s, 1.0, 1.0, true, false, rng, work);
      CHECK(c.was_random);
      ++counts[static_cast<std::size_t>(c.action.value())];
    }
    const double expect = n / 9.0;
    const double sigma = std::sqrt(n * (1.0 / 9) * (8.0 / 9));
    for (const int c : counts) CHECK(std::abs(c - expect) <= 3 * sigma);
  }

  SUBCASE("epsilon = 0 picks the unique best afterstate") {
    // symmetries off: with them on, all corner openings share an orbit
    // and tie by construction
    auto net = make_net(*g, NetMode::value_net);
    GameState s = g->initial_state(rng);
    const GameState target_after = g->compute_afterstate(s, ActionId(6));
    net.mutable_lut(0)[net.lut_index(0, target_after)] = 0.9;
    const Chosen c = agents::choose_action_td(*g, net, s, 0.0, 1.0, false, false, rng, work);
    CHECK(c.action == ActionId(6));
    CHECK(!c.was_random);
  }

  SUBCASE("all-equal values tie-break uniformly") {
    auto net = make_net(*g, NetMode::value_net);
    GameState s = g->initial_state(rng);
    s.cells[4] = 1;  // centre taken: 8 equal-valued replies on a zero net
    s.move_counter = 1;
    s.player_to_move = 1;
    std::array<int, 9> counts{};
    const int n = 10000;
    for (int i = 0; i < n; ++i)
      ++counts[static_cast<std::size_t>(
          agents::choose_action_td(*g, net, s, 0.0, 1.0, true, false, rng, work).action.value())];
    const double expect = n / 8.0;
    const double sigma = std::sqrt(n * (1.0 / 8) * (7.0 / 8));
    for (int cell = 0; cell < 9; ++cell) {
      if (cell == 4) {
        CHECK(counts[static_cast<std::size_t>(cell)] == 0);
      } else {
        CHECK(std::abs(counts[static_cast<std::size_t>(cell)] - expect) <= 3 * sigma);
      }
    }
  }

  SUBCASE("greedy set is invariant under positive weight scaling") {
    auto net = make_net(*g, NetMode::value_net);
    Rng wr(5);
    for (auto& w : net.mutable_lut(0)) w = wr.unit() - 0.5;
    const GameState s = g->initial_state(rng);
    auto argmax_set = [&](const NTupleNetwork& n2) {
      std::vector<int> best_actions;
      double best = -1e300;
      for (const ActionId a : legal_actions(*g, s)) {
        const auto orbit = symmetric_states(*g, g->compute_afterstate(s, a));
        const double v = n2.value(orbit);
        if (v > best + 1e-15) {
          best = v;
          best_actions.assign(1, a.value());
        } else if (std::abs(v - best) <= 1e-15) {
          best_actions.push_back(a.value());
        }
      }
      return best_actions;
    };
    const auto before = argmax_set(net);
    NTupleNetwork scaled = net;
    for (auto& w : scaled.mutable_lut(0)) w *= 37.5;
    CHECK(argmax_set(scaled) == before);
  }
}

TEST_CASE("choose_action_q") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});
  Rng rng(2);
  agents::PolicyWork work;

  SUBCASE("epsilon = 0 takes the highest q output") {
    auto net = make_net(*g, NetMode::q_net);
    GameState s = g->initial_state(rng);
    s.cells[4] = 1;
    s.player_to_move = 1;
    s.move_counter = 1;
    const auto orbit = symmetric_states(*g, s, true, true);
    REQUIRE(orbit.size() == 1);
    const std::uint64_t slice = net.lut(0).size() / 9;
    net.mutable_lut(0)[2 * slice + net.lut_index(0, s)] = 0.7;
    net.mutable_lut(0)[1 * slice + net.lut_index(0, s)] = 0.2;
    const Chosen c = agents::choose_action_q(*g, net, s, 0.0, 1.0, true, false, rng, work);
    CHECK(c.action == ActionId(2));
  }

  SUBCASE("epsilon = 1 uniform; fresh zero net ties break uniformly at epsilon 0") {
    auto net = make_net(*g, NetMode::q_net);
    const GameState s = g->initial_state(rng);
    std::array<int, 9> eps_counts{};
    std::array<int, 9> tie_counts{};
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      ++eps_counts[static_cast<std::size_t>(
          agents::choose_action_q(*g, net, s, 1.0, 1.0, true, false, rng, work).action.value())];
      ++tie_counts[static_cast<std::size_t>(
          agents::choose_action_q(*g, net, s, 0.0, 1.0, true, false, rng, work).action.value())];
    }
    const double expect = n / 9.0;
    const double sigma = std::sqrt(n * (1.0 / 9) * (8.0 / 9));
    for (int a = 0; a < 9; ++a) {
      CHECK(std::abs(eps_counts[static_cast<std::size_t>(a)] - expect) <= 3 * sigma);
      CHECK(std::abs(tie_counts[static_cast<std::size_t>(a)] - expect) <= 3 * sigma);
    }
  }
}

TEST_CASE("td episode drivers") {
  SUBCASE("first moves have no adaptation (null sLast guard)") {
    auto g = games::make_game(GameSpec{GameName::tictactoe});
    AgentParams params;
    params.sigma = Sigma::tanh_sigmoid;
    auto net = make_net(*g, NetMode::value_net, Sigma::tanh_sigmoid);
    EpisodeContext ctx(*g, params);
    EventLog log;
    Rng rng(3);
    agents::td_farl_episode(*g, net, params, g->initial_state(rng), 0.5, 0.1, rng, ctx, &log.sink);
    for (const auto& e : log.events)
      if (e.kind == UpdateEvent::Kind::adapt_v) CHECK(e.move_index >= 2);
  }

  SUBCASE("player-centric chaining: same player's adaptations are one round apart") {
    for (const char* spec : {"tictactoe", "nim3p:3x5"}) {
      auto g = games::make_game(games::parse_game_spec(spec));
      AgentParams params;
      params.sigma = Sigma::tanh_sigmoid;
      auto net = make_net(*g, NetMode::value_net, Sigma::tanh_sigmoid);
      EpisodeContext ctx(*g, params);
      Rng rng(5);
      const int players = g->num_players();
      for (int ep = 0; ep < 20; ++ep) {
        EventLog log;
        agents::td_farl_episode(*g, net, params, g->initial_state(rng), 0.3, 0.0, rng, ctx,
                                &log.sink);
        std::array<int, kMaxPlayers> last_move{-1, -1, -1};
        for (const auto& e : log.events) {
          if (e.kind != UpdateEvent::Kind::adapt_v) continue;
          CHECK(e.player == e.move_index % players);  // cyclic turn order
          if (last_move[static_cast<std::size_t>(e.player)] >= 0)
            CHECK(e.move_index - last_move[static_cast<std::size_t>(e.player)] == players);
          last_move[static_cast<std::size_t>(e.player)] = e.move_index;
        }
      }
    }
  }

  SUBCASE("FARL on: the loser's last afterstate is adapted towards his terminal reward") {
    auto g = games::make_game(GameSpec{GameName::tictactoe});
    AgentParams params;
    auto net = make_net(*g, NetMode::value_net);
    EpisodeContext ctx(*g, params);
    Rng rng(7);
    int decisive = 0;
    for (int ep = 0; ep < 50; ++ep) {
      EventLog log;
      const auto stats =
          agents::td_farl_episode(*g, net, params, g->initial_state(rng), 0.05, 0.3, rng, ctx,
                                  &log.sink);
      const bool draw = stats.final_scores[0] == 0.5;
      if (draw) continue;
      ++decisive;
      const int winner = stats.final_scores[0] == 1.0 ? 0 : 1;
      const int loser = 1 - winner;
      bool saw_loser_update = false;
      for (const auto& e : log.events)
        if (e.kind == UpdateEvent::Kind::final_reward && e.player == loser) {
          saw_loser_update = true;
          CHECK(e.target == stats.final_scores[loser]);
        }
      CHECK(saw_loser_update);
      CHECK(log.count(UpdateEvent::Kind::final_zero) == 1);
    }
    CHECK(decisive > 10);
  }

  SUBCASE("FARL off: no update of any kind after the terminal move's own adaptation") {
    auto g = games::make_game(GameSpec{GameName::tictactoe});
    AgentParams params;
    params.farl = false;
    params.learn_from_rm = true;  // count every adapt call
    auto net = make_net(*g, NetMode::value_net);
    EpisodeContext ctx(*g, params);
    Rng rng(9);
    EventLog log;
    agents::td_farl_episode(*g, net, params, g->initial_state(rng), 0.2, 0.2, rng, ctx, &log.sink);
    CHECK(log.count(UpdateEvent::Kind::final_reward) == 0);
    CHECK(log.count(UpdateEvent::Kind::final_zero) == 0);
    CHECK(net.update_calls() == log.events.size());
  }

  SUBCASE("single-player 2048: FARL part 1 is vacuous, drivers coincide trace for trace") {
    auto g = games::make_game(GameSpec{GameName::g2048});
    for (const bool terminal_zero : {false, true}) {
      AgentParams params;
      params.sigma = Sigma::identity;
      params.epsilon_start = params.epsilon_final = 0.0;
      params.tuple_spec = "random:2x3";
      params.farl = true;
      params.farl_terminal_zero = terminal_zero;
      const auto tuples = games::tuples_from_spec(*g, params.tuple_spec, 11);
      NTupleNetwork net_a(NetMode::value_net, tuples, 16, 4, Sigma::identity, {});
      NTupleNetwork net_b(NetMode::value_net, tuples, 16, 4, Sigma::identity, {});
      EpisodeContext ctx_a(*g, params), ctx_b(*g, params);
      for (int ep = 0; ep < 3; ++ep) {
        Rng rng_a(1000 + ep), rng_b(1000 + ep);
        EventLog log_a, log_b;
        agents::td_farl_episode(*g, net_a, params, g->initial_state(rng_a), 0.3, 0.0, rng_a, ctx_a,
                                &log_a.sink);
        agents::td_plain_episode(*g, net_b, params, g->initial_state(rng_b), 0.3, 0.0, rng_b,
                                 ctx_b, &log_b.sink);
        REQUIRE(!log_a.events.empty());
        REQUIRE(same_events(log_a.events, log_b.events));
        CHECK(log_a.count(UpdateEvent::Kind::final_reward) == 0);
        CHECK(log_a.count(UpdateEvent::Kind::final_zero) == (terminal_zero ? 1 : 0));
      }
      CHECK(ntuple::weight_checksum(net_a) == ntuple::weight_checksum(net_b));
    }
  }
}

TEST_CASE("sarsa and q-learning drivers") {
  SUBCASE("one-step episode: single update with target = terminal reward") {
    auto g = games::make_game(GameSpec{GameName::nim, 1, 1});  // one heap, one stone
    AgentParams params;
    params.farl = false;
    auto net = make_net(*g, NetMode::q_net);
    EpisodeContext ctx(*g, params);
    Rng rng(13);
    EventLog log;
    agents::sarsa_episode(*g, net, params, false, g->initial_state(rng), 0.5, 0.0, rng, ctx,
                          &log.sink);
    // the mover (player 0) took the last stone and lost; the player to
    // act at the terminal is player 1, whose chain is empty, so no
    // in-episode update fires and FARL is off
    CHECK(log.events.empty());

    // with FARL: exactly one final update, target = mover's reward 0
    EventLog log2;
    agents::sarsa_episode(*g, net, params, true, g->initial_state(rng), 0.5, 0.0, rng, ctx,
                          &log2.sink);
    REQUIRE(log2.events.size() == 1);
    CHECK(log2.events[0].kind == UpdateEvent::Kind::final_reward);
    CHECK(log2.events[0].player == 0);
    CHECK(log2.events[0].target == 0.0);
  }

  SUBCASE("terminal next state uses M = 0 in the target") {
    // 2-stone Nim: whatever the first player does, the second player's
    // in-episode update after the terminal move must have target r + 0
    auto g = games::make_game(GameSpec{GameName::nim, 1, 2});
    AgentParams params;
    auto net = make_net(*g, NetMode::q_net);
    EpisodeContext ctx(*g, params);
    Rng rng(17);
    for (int ep = 0; ep < 10; ++ep) {
      EventLog log;
      agents::sarsa_episode(*g, net, params, true, g->initial_state(rng), 0.1, 0.5, rng, ctx,
                            &log.sink);
      for (const auto& e : log.events)
        if (e.kind == UpdateEvent::Kind::adapt_q && e.move_index >= 1)
          CHECK((e.target == 0.0 || e.target == 1.0));  // pure reward, no bootstrap
    }
  }

  SUBCASE("greedy SARSA equals Q-learning on a tie-free net") {
    auto g = games::make_game(GameSpec{GameName::tictactoe});
    AgentParams params;
    params.epsilon_start = params.epsilon_final = 0.0;
    const auto tuples = games::default_tuples(*g, 7);
    NTupleNetwork net_s(NetMode::q_net, tuples, 3, 9, Sigma::identity, {});
    NTupleNetwork net_q(NetMode::q_net, tuples, 3, 9, Sigma::identity, {});
    // identical tiny random weights make every argmax unique
    Rng wr(19);
    for (int i = 0; i < net_s.num_tuples(); ++i)
      for (std::size_t k = 0; k < net_s.lut(i).size(); ++k) {
        const double w = 1e-6 * (wr.unit() - 0.5);
        net_s.mutable_lut(i)[k] = w;
        net_q.mutable_lut(i)[k] = w;
      }
    EpisodeContext ctx_s(*g, params), ctx_q(*g, params);
    for (int ep = 0; ep < 5; ++ep) {
      Rng rng_s(100 + ep), rng_q(100 + ep);
      EventLog log_s, log_q;
      agents::sarsa_episode(*g, net_s, params, true, g->initial_state(rng_s), 0.2, 0.0, rng_s,
                            ctx_s, &log_s.sink);
      agents::q_learn_episode(*g, net_q, params, g->initial_state(rng_q), 0.2, 0.0, rng_q, ctx_q,
                              &log_q.sink);
      REQUIRE(!log_s.events.empty());
      REQUIRE(same_events(log_s.events, log_q.events));
    }
    CHECK(ntuple::weight_checksum(net_s) == ntuple::weight_checksum(net_q));
  }

  SUBCASE("non-starting players have no adaptation in the first round") {
    auto g = games::make_game(GameSpec{GameName::nim3p, 3, 5});
    AgentParams params;
    auto net = make_net(*g, NetMode::q_net);
    EpisodeContext ctx(*g, params);
    Rng rng(23);
    EventLog log;
    agents::sarsa_episode(*g, net, params, true, g->initial_state(rng), 0.2, 0.3, rng, ctx,
                          &log.sink);
    for (const auto& e : log.events)
      if (e.kind == UpdateEvent::Kind::adapt_q) CHECK(e.move_index >= 2);
  }
}

TEST_CASE("train") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});

  SUBCASE("evaluation period produces episodes/num_eval curve points") {
    AgentParams params;
    params.train_episodes = 300;
    params.num_eval = 100;
    params.alpha_start = 1.0;
    params.alpha_final = 0.5;
    const auto result = agents::train(*g, Algorithm::td_farl, params, 42);
    REQUIRE(result.curve.size() == 3);
    CHECK(result.curve[0].episode == 100);
    CHECK(result.curve[2].episode == 300);
    CHECK(result.curve[0].alpha > result.curve[2].alpha);
  }

  SUBCASE("degenerate schedule keeps alpha constant") {
    AgentParams params;
    params.train_episodes = 50;
    params.num_eval = 10;
    params.alpha_start = params.alpha_final = 0.7;
    const auto result = agents::train(*g, Algorithm::td_farl, params, 1);
    for (const auto& p : result.curve) CHECK(p.alpha == 0.7);
  }

  SUBCASE("same seed, bit-identical weights; different seed differs") {
    AgentParams params;
    params.train_episodes = 200;
    const auto a = agents::train(*g, Algorithm::td_farl, params, 9);
    const auto b = agents::train(*g, Algorithm::td_farl, params, 9);
    const auto c = agents::train(*g, Algorithm::td_farl, params, 10);
    CHECK(ntuple::weight_checksum(a.net) == ntuple::weight_checksum(b.net));
    CHECK(ntuple::weight_checksum(a.net) != ntuple::weight_checksum(c.net));
  }

  SUBCASE("choose_start_01 starts half the episodes one move in") {
    auto hex = games::make_game(GameSpec{GameName::hex});
    AgentParams params;
    params.choose_start_01 = true;
    Rng rng(31);
    int advanced = 0;
    const int n = 2000;
    for (int i = 0; i < n; ++i)
      advanced += agents::training_start(*hex, params, rng).move_counter == 1;
    CHECK(advanced > n / 2 - 3 * std::sqrt(n * 0.25));
    CHECK(advanced < n / 2 + 3 * std::sqrt(n * 0.25));
  }

  SUBCASE("invalid parameters are rejected") {
    AgentParams params;
    params.lambda = 1.0;  // no cap
    CHECK_THROWS_AS(agents::train(*g, Algorithm::td_farl, params, 1), std::invalid_argument);
  }
}
