#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "farl/core/types.hpp"

namespace farl::games {

// Cell permutations of the dihedral group of a w x w board, identity
// first: 4 rotations, then the 4 mirrored rotations.
// perm[k][src] = dst, i.e. the content of cell src moves to cell dst.
std::vector<std::array<std::uint8_t, kMaxCells>> dihedral8_perms(int w);

// The two-element group {identity, left-right mirror} of a w x h board
// (row-major, w columns).
std::vector<std::array<std::uint8_t, kMaxCells>> mirror_lr_perms(int w, int h);

// {identity, 180-degree rotation} of a w x w board.
std::vector<std::array<std::uint8_t, kMaxCells>> rot180_perms(int w);

// All permutations of n items (n <= 5), identity first.
std::vector<std::vector<int>> all_permutations(int n);

}  // namespace farl::games
