#include "farl/games/board_symmetry.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace farl::games {

namespace {

using Perm = std::array<std::uint8_t, kMaxCells>;

Perm identity_perm(int n) {
  Perm p{};
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return p;
}

// first a, then b (content src -> a[src] -> b[a[src]])
Perm compose(const Perm& a, const Perm& b, int n) {
  Perm out{};
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = b[a[static_cast<std::size_t>(i)]];
  return out;
}

}  // namespace

std::vector<Perm> dihedral8_perms(int w) {
  const int n = w * w;
  Perm rot90{};    // (r,c) -> (c, w-1-r), clockwise
  Perm mirror{};   // (r,c) -> (r, w-1-c)
  for (int r = 0; r < w; ++r)
    for (int c = 0; c < w; ++c) {
      rot90[static_cast<std::size_t>(r * w + c)] = static_cast<std::uint8_t>(c * w + (w - 1 - r));
      mirror[static_cast<std::size_t>(r * w + c)] = static_cast<std::uint8_t>(r * w + (w - 1 - c));
    }
  std::vector<Perm> out;
  out.reserve(8);
  Perm cur = identity_perm(n);
  for (int rot = 0; rot < 4; ++rot) {
    out.push_back(cur);
    out.push_back(compose(cur, mirror, n));
    cur = compose(cur, rot90, n);
  }
  return out;
}

std::vector<Perm> mirror_lr_perms(int w, int h) {
  const int n = w * h;
  std::vector<Perm> out;
  out.push_back(identity_perm(n));
  Perm m{};
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      m[static_cast<std::size_t>(r * w + c)] = static_cast<std::uint8_t>(r * w + (w - 1 - c));
  out.push_back(m);
  return out;
}

std::vector<Perm> rot180_perms(int w) {
  const int n = w * w;
  std::vector<Perm> out;
  out.push_back(identity_perm(n));
  Perm m{};
  for (int r = 0; r < w; ++r)
    for (int c = 0; c < w; ++c)
      m[static_cast<std::size_t>(r * w + c)] =
          static_cast<std::uint8_t>((w - 1 - r) * w + (w - 1 - c));
  out.push_back(m);
  return out;
}

std::vector<std::vector<int>> all_permutations(int n) {
  assert(n >= 1 && n <= 5);
  std::vector<int> base(static_cast<std::size_t>(n));
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

}  // namespace farl::games
