#pragma once

#include <string>
#include <vector>

#include "farl/core/game.hpp"
#include "farl/ntuple/network.hpp"

namespace farl::games {

// The per-game tuple geometries used by the training setups:
//   tictactoe    one 9-tuple over all cells, randomly ordered
//   nim          one 3-tuple over all heaps
//   nim3p        two all-heap tuples with independent tables
//   connectfour  70 random-walk 8-tuples
//   hex          25 random-walk 6-tuples
//   othello      50 random-walk 6-tuples
//   2048         the four 2x3 rectangles
// Random-walk tuples are connected sets of board cells grown from a
// seeded generator and stay fixed afterwards.
std::vector<ntuple::NTupleDef> default_tuples(const Game& g, std::uint64_t seed);

std::vector<ntuple::NTupleDef> random_walk_tuples(const Game& g, int count, int length,
                                                  std::uint64_t seed);

// Tuple spec strings for configs: "default", "random:<count>x<len>",
// "full" (one tuple over the whole board), "copies:<k>" (k full-board
// tuples), "rects2x3" (the 2048 geometry).
std::vector<ntuple::NTupleDef> tuples_from_spec(const Game& g, const std::string& spec,
                                                std::uint64_t seed);

}  // namespace farl::games
