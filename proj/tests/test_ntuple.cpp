#include <cmath>
#include <sstream>

#include "doctest.h"
#include "farl/core/game.hpp"
#include "farl/games/factory.hpp"
#include "farl/games/ntuple_presets.hpp"
#include "farl/ntuple/network.hpp"
#include "farl/ntuple/serialize.hpp"
#include "farl/opponents/random_player.hpp"
#include "support/oracles.hpp"

using namespace farl;
using ntuple::EligibilityHorizon;
using ntuple::EligMode;
using ntuple::NetMode;
using ntuple::NTupleDef;
using ntuple::NTupleNetwork;
using ntuple::Sigma;
using ntuple::TclConfig;
using ntuple::TclTransfer;

namespace {

NTupleDef full9() {
  NTupleDef def;
  for (int c = 0; c < 9; ++c) def.cells.push_back(c);
  return def;
}

GameState random_midgame(const Game& g, Rng& rng, int max_moves) {
  GameState s = g.initial_state(rng);
  const int moves = rng.below(max_moves + 1);
  for (int i = 0; i < moves && !s.terminal; ++i)
    s = make_action(g, s, opponents::random_player(g, s, rng), true, rng).next_state;
  return s;
}

}  // namespace

TEST_CASE("lut_index positional code") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});
  NTupleNetwork net(NetMode::value_net, {full9()}, 3, 9, Sigma::identity, {});
  Rng rng(1);
  GameState s = g->initial_state(rng);

  SUBCASE("empty board indexes 0") { CHECK(net.lut_index(0, s) == 0); }

  SUBCASE("X at cell 0 and O at cell 4 gives 1*3^0 + 2*3^4 = 163") {
    s.cells[0] = 1;
    s.cells[4] = 2;
    CHECK(net.lut_index(0, s) == 163);
  }

  SUBCASE("maximal code for a 2-tuple: all cells at P-1") {
    NTupleNetwork two(NetMode::value_net, {NTupleDef{{0, 1}}}, 3, 9, Sigma::identity, {});
    s.cells[0] = s.cells[1] = 2;
    CHECK(two.lut_index(0, s) == 8);
  }

  SUBCASE("cell value outside the alphabet is rejected") {
    s.cells[3] = 3;
    CHECK_THROWS_AS(net.lut_index(0, s), std::domain_error);
  }

  SUBCASE("tuple definitions are validated") {
    CHECK_THROWS_AS(NTupleNetwork(NetMode::value_net, {NTupleDef{{0, 0}}}, 3, 9, Sigma::identity, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(NTupleNetwork(NetMode::value_net, {NTupleDef{{}}}, 3, 9, Sigma::identity, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(NTupleNetwork(NetMode::value_net, {}, 3, 9, Sigma::identity, {}),
                    std::invalid_argument);
  }
}

TEST_CASE("value-net evaluation") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});
  Rng rng(2);

  SUBCASE("all-zero weights give tanh(0) = 0") {
    NTupleNetwork net(NetMode::value_net, {full9()}, 3, 9, Sigma::tanh_sigmoid, {});
    const auto orbit = symmetric_states(*g, g->initial_state(rng));
    CHECK(net.value(orbit) == 0.0);
  }

  SUBCASE("single activated weight with identity sigma") {
    NTupleNetwork net(NetMode::value_net, {full9()}, 3, 9, Sigma::identity, {});
    GameState s = g->initial_state(rng);
    s.cells[0] = 1;
    net.mutable_lut(0)[net.lut_index(0, s)] = 0.5;
    const auto orbit = symmetric_states(*g, s, /*use_symmetry=*/false);
    CHECK(net.value(orbit) == 0.5);
  }

  SUBCASE("corner X orbit: four members each contributing 0.25 sum to 1") {
    NTupleNetwork net(NetMode::value_net, {full9()}, 3, 9, Sigma::identity, {});
    GameState s = g->initial_state(rng);
    s.cells[0] = 1;
    const auto orbit = symmetric_states(*g, s);
    REQUIRE(orbit.size() == 4);
    for (const auto& q : orbit.states) net.mutable_lut(0)[net.lut_index(0, q)] = 0.25;
    CHECK(net.value(orbit) == 1.0);
  }
}

TEST_CASE("q-net evaluation") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});
  Rng rng(3);

  SUBCASE("all-zero weights map every action to sigma(0)") {
    NTupleNetwork net(NetMode::q_net, {full9()}, 3, 9, Sigma::tanh_sigmoid, {});
    const auto orbit = symmetric_states(*g, g->initial_state(rng), true, /*want_action_maps=*/true);
    std::vector<double> out;
    const auto actions = legal_actions(*g, g->initial_state(rng));
    net.q_values(orbit, actions, out);
    for (const double v : out) CHECK(v == 0.0);
  }

  SUBCASE("a weight in one action slice only moves that action") {
    NTupleNetwork net(NetMode::q_net, {full9()}, 3, 9, Sigma::identity, {});
    GameState s = g->initial_state(rng);
    s.cells[4] = 1;  // centre: orbit is the singleton
    const auto orbit = symmetric_states(*g, s, true, true);
    REQUIRE(orbit.size() == 1);
    const std::uint64_t slice = 19683;  // 3^9
    net.mutable_lut(0)[3 * slice + net.lut_index(0, s)] = 1.0;  // action 3
    CHECK(net.q_value(orbit, ActionId(3)) == 1.0);
    CHECK(net.q_value(orbit, ActionId(5)) == 0.0);
  }

  SUBCASE("Q(s,a) == Q(rho(s), rho(a)) on trivial-stabilizer states") {
    NTupleNetwork net(NetMode::q_net, {full9()}, 3, 9, Sigma::identity, {});
    Rng wr(7);
    for (auto& w : net.mutable_lut(0)) w = wr.unit() - 0.5;
    int tested = 0;
    for (int trial = 0; trial < 50 && tested < 10; ++trial) {
      const GameState s = random_midgame(*g, rng, 5);
      if (s.terminal) continue;
      const auto orbit = symmetric_states(*g, s, true, true);
      if (orbit.size() != g->num_symmetries()) continue;  // skip self-symmetric boards
      ++tested;
      for (int k = 0; k < g->num_symmetries(); ++k) {
        GameState rho_s = s;
        const auto perm = g->cell_perm(k);
        for (int c = 0; c < 9; ++c) rho_s.cells[perm[static_cast<std::size_t>(c)]] = s.cells[static_cast<std::size_t>(c)];
        const auto rho_orbit = symmetric_states(*g, rho_s, true, true);
        for (const ActionId a : legal_actions(*g, s)) {
          const ActionId rho_a = ActionId(g->symmetry_action_map(k)[static_cast<std::size_t>(a.value())]);
          CHECK(net.q_value(orbit, a) == doctest::Approx(net.q_value(rho_orbit, rho_a)).epsilon(1e-12));
        }
      }
    }
    CHECK(tested == 10);
  }

  SUBCASE("q-net weight count is N_a times the value net's") {
    NTupleNetwork v(NetMode::value_net, {full9()}, 3, 9, Sigma::identity, {});
    NTupleNetwork q(NetMode::q_net, {full9()}, 3, 9, Sigma::identity, {});
    CHECK(q.num_weights() == 9 * v.num_weights());
  }
}

TEST_CASE("horizon_length") {
  CHECK(ntuple::horizon_length(0.5, 0.1) == 3);
  CHECK(ntuple::horizon_length(0.0, 0.1) == 0);
  CHECK(ntuple::horizon_length(0.5, 0.01) == 6);
  CHECK(ntuple::horizon_length(0.9, 0.1) == 21);
  CHECK_THROWS_AS(ntuple::horizon_length(1.0, 0.1), std::invalid_argument);
  CHECK(ntuple::horizon_length(1.0, 0.1, 16) == 16);
  CHECK_THROWS_AS(ntuple::horizon_length(0.5, 1.5), std::invalid_argument);
}

TEST_CASE("td_lambda_update") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});
  Rng rng(4);

  SUBCASE("exact move to target: single tuple, no symmetry") {
    NTupleNetwork net(NetMode::value_net, {full9()}, 3, 9, Sigma::identity, {});
    GameState s = g->initial_state(rng);
    s.cells[2] = 1;
    EligibilityHorizon hz(0, 0.0, EligMode::et);
    auto orbit = symmetric_states(*g, s, false);
    SymmetrySet scratch = orbit;
    hz.push_swap(scratch, ActionId(2), false);
    // delta = T - V = 1 - 0
    td_lambda_update(net, hz, 1.0, 1.0, false, false);
    CHECK(net.lut(0)[net.lut_index(0, s)] == 1.0);
    CHECK(net.value(orbit) == 1.0);
  }

  SUBCASE("two tuples split the update and still reach the target exactly") {
    NTupleNetwork net(NetMode::value_net, {full9(), full9()}, 3, 9, Sigma::identity, {});
    GameState s = g->initial_state(rng);
    s.cells[1] = 2;
    EligibilityHorizon hz(0, 0.0, EligMode::et);
    auto orbit = symmetric_states(*g, s, false);
    SymmetrySet scratch = orbit;
    hz.push_swap(scratch, ActionId(1), false);
    td_lambda_update(net, hz, 1.0, 1.0, false, false);
    CHECK(net.lut(0)[net.lut_index(0, s)] == 0.5);
    CHECK(net.lut(1)[net.lut_index(1, s)] == 0.5);
    CHECK(net.value(orbit) == 1.0);
  }

  SUBCASE("random-move updates are skipped when learning from them is off") {
    NTupleNetwork net(NetMode::value_net, {full9()}, 3, 9, Sigma::identity, {});
    GameState s = g->initial_state(rng);
    EligibilityHorizon hz(0, 0.0, EligMode::et);
    auto scratch = symmetric_states(*g, s, false);
    hz.push_swap(scratch, ActionId(0), true);
    td_lambda_update(net, hz, 1.0, 1.0, /*learn_from_random=*/false, /*random_generated=*/true);
    CHECK(net.num_touched() == 0);
    CHECK(net.update_calls() == 0);
    td_lambda_update(net, hz, 1.0, 1.0, /*learn_from_random=*/true, /*random_generated=*/true);
    CHECK(net.num_touched() == 1);
  }

  SUBCASE("index inhibition: a self-symmetric activation increments once") {
    // tuple over cell 0 alone; board X on 0 and 2 has a 4-member orbit
    // of which two members put X on cell 0
    NTupleNetwork net(NetMode::value_net, {NTupleDef{{0}}}, 3, 9, Sigma::identity, {});
    GameState s = g->initial_state(rng);
    s.cells[0] = s.cells[2] = 1;
    auto orbit = symmetric_states(*g, s);
    REQUIRE(orbit.size() == 4);
    int with_x_at_0 = 0;
    for (const auto& q : orbit.states) with_x_at_0 += q.cells[0] == 1;
    REQUIRE(with_x_at_0 == 2);
    EligibilityHorizon hz(0, 0.0, EligMode::et);
    SymmetrySet scratch = orbit;
    hz.push_swap(scratch, ActionId(0), false);
    td_lambda_update(net, hz, 1.0, 1.0, false, false);
    // one increment of 1/(m*N_S) despite two activations
    CHECK(net.lut(0)[1] == 0.25);
    // and the exact-target identity still holds through the double count
    CHECK(net.value(orbit) == 1.0);
  }

  SUBCASE("tanh derivative scales the step") {
    NTupleNetwork net(NetMode::value_net, {full9()}, 3, 9, Sigma::tanh_sigmoid, {});
    GameState s = g->initial_state(rng);
    s.cells[5] = 1;
    auto orbit = symmetric_states(*g, s, false);
    SymmetrySet scratch = orbit;
    EligibilityHorizon hz(0, 0.0, EligMode::et);
    hz.push_swap(scratch, ActionId(5), false);
    net.mutable_lut(0)[net.lut_index(0, s)] = 0.3;
    const double v = std::tanh(0.3);
    td_lambda_update(net, hz, 0.5, 1.0, false, false);
    CHECK(net.lut(0)[net.lut_index(0, s)] ==
          doctest::Approx(0.3 + 0.5 * (1 - v * v)).epsilon(1e-15));
  }
}

TEST_CASE("exact-target property over randomized nets and states") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});
  Rng rng(99);
  int cases = 0;
  while (cases < 1000) {
    const GameState s = random_midgame(*g, rng, 7);
    // random tuple set: 1..4 tuples of 1..9 distinct cells
    const int m = 1 + rng.below(4);
    std::vector<NTupleDef> defs;
    for (int i = 0; i < m; ++i) {
      NTupleDef def;
      int remaining[9] = {0, 1, 2, 3, 4, 5, 6, 7, 8};
      const int n = 1 + rng.below(9);
      for (int k = 0; k < n; ++k) {
        const int pick = rng.below(9 - k);
        def.cells.push_back(remaining[pick]);
        remaining[pick] = remaining[9 - k - 1];
      }
      defs.push_back(std::move(def));
    }
    NTupleNetwork net(NetMode::value_net, defs, 3, 9, Sigma::identity, {});
    // pre-train randomly so V(s) != 0
    for (int j = 0; j < 20; ++j) {
      const GameState q = random_midgame(*g, rng, 7);
      auto orb = symmetric_states(*g, q);
      EligibilityHorizon hz(0, 0.0, EligMode::et);
      hz.push_swap(orb, ActionId(0), false);
      td_lambda_update(net, hz, rng.unit() - 0.5, 1.0, false, false);
    }
    const bool use_sym = rng.below(2) == 1;
    auto orbit = symmetric_states(*g, s, use_sym);
    SymmetrySet scratch = orbit;
    EligibilityHorizon hz(0, 0.0, EligMode::et);
    hz.push_swap(scratch, ActionId(0), false);
    const double target = 2.0 * rng.unit() - 1.0;
    const double delta = target - net.value(orbit);
    td_lambda_update(net, hz, delta, 1.0, false, false);
    REQUIRE(std::abs(net.value(orbit) - target) <= 1e-12);
    ++cases;
  }
  CHECK(cases == 1000);
}

TEST_CASE("horizon method equals accumulating eligibility traces on short episodes") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});
  Rng rng(123);
  double worst = 0.0;
  for (int trace = 0; trace < 200; ++trace) {
    const double lambda = trace % 3 == 0 ? 0.5 : (trace % 3 == 1 ? 0.3 : 0.9);
    std::vector<std::vector<int>> tuple_cells = {{0, 1, 2, 3, 4, 5, 6, 7, 8}, {0, 4, 8}};
    std::vector<NTupleDef> defs;
    for (const auto& cells : tuple_cells) defs.push_back(NTupleDef{cells});
    NTupleNetwork net(NetMode::value_net, defs, 3, 9, Sigma::identity, {});
    test_support::Eq1Reference ref(*g, tuple_cells, 3, lambda, true);

    EligibilityHorizon hz(8, lambda, EligMode::et);
    GameState s = g->initial_state(rng);
    const int len = 1 + rng.below(5);
    for (int t = 0; t < len && !s.terminal; ++t) {
      s = make_action(*g, s, opponents::random_player(*g, s, rng), true, rng).next_state;
      ref.observe_state(s);
      auto orbit = symmetric_states(*g, s);
      hz.push_swap(orbit, ActionId(0), false);
      const double delta = 2.0 * rng.unit() - 1.0;
      td_lambda_update(net, hz, delta, 0.7, false, false);
      ref.update(delta, 0.7);
    }
    for (const auto& [key, w] : ref.weights())
      worst = std::max(worst, std::abs(w - net.lut(key.first)[key.second]));
    // and no weight outside the reference's support moved
    std::uint64_t nonzero = 0;
    for (int i = 0; i < net.num_tuples(); ++i)
      for (const double w : net.lut(i)) nonzero += w != 0.0;
    CHECK(nonzero <= ref.weights().size());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("tcl") {
  SUBCASE("rate formulas") {
    CHECK(ntuple::tcl_rate(0.4, 0.4, TclTransfer::identity, 0) == 1.0);
    CHECK(ntuple::tcl_rate(-0.4, 0.4, TclTransfer::exponential, 2.7) == 1.0);
    CHECK(ntuple::tcl_rate(0.0, 0.4, TclTransfer::identity, 0) == 0.0);
    CHECK(ntuple::tcl_rate(0.0, 0.4, TclTransfer::exponential, 2.7) ==
          doctest::Approx(std::exp(-2.7)).epsilon(1e-12));
    CHECK(ntuple::tcl_rate(0.0, 0.0, TclTransfer::identity, 0) == 1.0);  // virgin weight
  }

  SUBCASE("bounds over randomized accumulation sequences") {
    Rng rng(31);
    const double beta = 2.7;
    for (int seq = 0; seq < 2000; ++seq) {
      double n = 1e-4, a = 1e-4;
      for (int step = 0; step < 50; ++step) {
        const double r = 2.0 * rng.unit() - 1.0;
        n += r;
        a += std::abs(r);
        const double ratio = std::abs(n) / a;
        REQUIRE(ratio >= 0.0);
        REQUIRE(ratio <= 1.0);
        const double rate = ntuple::tcl_rate(n, a, TclTransfer::exponential, beta);
        REQUIRE(rate >= std::exp(-beta) - 1e-15);
        REQUIRE(rate <= 1.0 + 1e-15);
      }
    }
  }

  SUBCASE("accumulators collect the recommended change, not the applied one") {
    auto g = games::make_game(GameSpec{GameName::tictactoe});
    Rng rng(5);
    TclConfig tcl{TclTransfer::identity, 2.7, 1e-4};
    NTupleNetwork net(NetMode::value_net, {full9()}, 3, 9, Sigma::identity, tcl);
    GameState s = g->initial_state(rng);
    s.cells[7] = 1;
    auto orbit = symmetric_states(*g, s, false);
    SymmetrySet scratch = orbit;
    EligibilityHorizon hz(0, 0.0, EligMode::et);
    hz.push_swap(scratch, ActionId(7), false);
    const std::uint64_t idx = net.lut_index(0, s);
    td_lambda_update(net, hz, 0.5, 1.0, false, false);
    // recommended change = 0.5; applied = alpha * rate(1e-4/1e-4 = 1) * 0.5
    CHECK(net.tcl_accum_net(0)[idx] == doctest::Approx(1e-4 + 0.5));
    CHECK(net.tcl_accum_abs(0)[idx] == doctest::Approx(1e-4 + 0.5));
    CHECK(net.lut(0)[idx] == doctest::Approx(0.5));
    // opposite-sign change lowers the rate for the next step
    td_lambda_update(net, hz, -0.5, 1.0, false, false);
    const double ratio = std::abs(net.tcl_accum_net(0)[idx]) / net.tcl_accum_abs(0)[idx];
    CHECK(ratio < 0.01);
  }
}

TEST_CASE("symmetry invariance after many updates") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});
  Rng rng(77);
  NTupleNetwork net(NetMode::value_net, {full9(), NTupleDef{{0, 1, 3, 4}}}, 3, 9,
                    Sigma::tanh_sigmoid, {});
  EligibilityHorizon hz(2, 0.5, EligMode::et);
  for (int u = 0; u < 10000; ++u) {
    const GameState s = random_midgame(*g, rng, 8);
    auto orbit = symmetric_states(*g, s);
    hz.push_swap(orbit, ActionId(0), false);
    td_lambda_update(net, hz, rng.unit() - 0.5, 0.3, false, false);
  }
  for (int check = 0; check < 200; ++check) {
    const GameState s = random_midgame(*g, rng, 8);
    const auto orbit = symmetric_states(*g, s);
    const double v = net.value(orbit);
    for (const auto& q : orbit.states) {
      const auto orbit_q = symmetric_states(*g, q);
      REQUIRE(std::abs(net.value(orbit_q) - v) <= 1e-12);
    }
  }
}

TEST_CASE("serialization") {
  auto g = games::make_game(GameSpec{GameName::tictactoe});
  Rng rng(55);

  SUBCASE("fresh net round trip: identical values on 1000 random states") {
    TclConfig tcl{TclTransfer::exponential, 2.7, 1e-4};
    NTupleNetwork net(NetMode::value_net, games::default_tuples(*g, 4), 3, 9,
                      Sigma::tanh_sigmoid, tcl);
    std::stringstream buf;
    ntuple::save_agent(buf, net, g->spec(), true, 1.0);
    auto loaded = ntuple::load_agent(buf);
    CHECK(loaded.game == g->spec());
    CHECK(loaded.use_symmetry == true);
    for (int i = 0; i < 1000; ++i) {
      const GameState s = random_midgame(*g, rng, 9);
      const auto orbit = symmetric_states(*g, s);
      REQUIRE(net.value(orbit) == loaded.net.value(orbit));
    }
  }

  SUBCASE("trained net round trips weights, tcl accumulators and touched flags") {
    TclConfig tcl{TclTransfer::identity, 2.7, 1e-4};
    NTupleNetwork net(NetMode::value_net, {full9()}, 3, 9, Sigma::tanh_sigmoid, tcl);
    EligibilityHorizon hz(3, 0.5, EligMode::et);
    for (int u = 0; u < 500; ++u) {
      auto orbit = symmetric_states(*g, random_midgame(*g, rng, 8));
      hz.push_swap(orbit, ActionId(0), false);
      td_lambda_update(net, hz, rng.unit() - 0.5, 0.8, false, false);
    }
    std::stringstream buf;
    ntuple::save_agent(buf, net, g->spec(), true, 1.0);
    auto loaded = ntuple::load_agent(buf);
    CHECK(loaded.net.num_touched() == net.num_touched());
    for (std::size_t k = 0; k < net.lut(0).size(); ++k) {
      REQUIRE(loaded.net.lut(0)[k] == net.lut(0)[k]);
      REQUIRE(loaded.net.tcl_accum_net(0)[k] == net.tcl_accum_net(0)[k]);
      REQUIRE(loaded.net.tcl_accum_abs(0)[k] == net.tcl_accum_abs(0)[k]);
    }
    CHECK(ntuple::weight_checksum(loaded.net) == ntuple::weight_checksum(net));
  }

  SUBCASE("truncated stream fails the checksum, leaving no partial agent") {
    NTupleNetwork net(NetMode::value_net, {full9()}, 3, 9, Sigma::identity, {});
    std::stringstream buf;
    ntuple::save_agent(buf, net, g->spec(), true, 1.0);
    const std::string full = buf.str();
    std::stringstream cut(full.substr(0, full.size() - 5));
    CHECK_THROWS_AS(ntuple::load_agent(cut), std::runtime_error);
    // flipping a weight byte trips the checksum
    std::string corrupt = full;
    corrupt[full.size() - 2000] = static_cast<char>(corrupt[full.size() - 2000] ^ 0x40);
    std::stringstream bad(corrupt);
    CHECK_THROWS_WITH_AS(ntuple::load_agent(bad), doctest::Contains("checksum"),
                         std::runtime_error);
  }
}
