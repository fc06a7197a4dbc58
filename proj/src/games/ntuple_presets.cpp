#include "farl/games/ntuple_presets.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "farl/core/rng.hpp"
#include "farl/games/hex.hpp"

namespace farl::games {

namespace {

using ntuple::NTupleDef;

// neighbourhood graph used by the random walks: 8-neighbourhood on the
// square-grid games, the hex adjacency on Hex, a chain on Nim heaps
std::vector<std::vector<int>> adjacency(const Game& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.num_cells()));
  const GameName name = g.spec().name;
  if (name == GameName::hex) {
    const auto& hex = static_cast<const HexGame&>(g);
    for (int c = 0; c < g.num_cells(); ++c) hex.neighbours(c, adj[static_cast<std::size_t>(c)]);
    return adj;
  }
  if (name == GameName::nim || name == GameName::nim3p) {
    for (int c = 0; c < g.num_cells(); ++c) {
      if (c > 0) adj[static_cast<std::size_t>(c)].push_back(c - 1);
      if (c < g.num_cells() - 1) adj[static_cast<std::size_t>(c)].push_back(c + 1);
    }
    return adj;
  }
  int w = 0;
  switch (name) {
    case GameName::tictactoe: w = 3; break;
    case GameName::g2048: w = 4; break;
    case GameName::connect_four: w = 7; break;
    case GameName::othello: w = 8; break;
    default: throw std::invalid_argument("no adjacency defined for this game");
  }
  const int h = g.num_cells() / w;
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int rr = r + dr, cc = c + dc;
          if (rr >= 0 && rr < h && cc >= 0 && cc < w)
            adj[static_cast<std::size_t>(r * w + c)].push_back(rr * w + cc);
        }
  return adj;
}

NTupleDef full_board_tuple(const Game& g) {
  NTupleDef def;
  def.cells.resize(static_cast<std::size_t>(g.num_cells()));
  std::iota(def.cells.begin(), def.cells.end(), 0);
  return def;
}

std::vector<NTupleDef> rects_2x3() {
  // the four 2x3 rectangles of the 4x4 board geometry
  std::vector<NTupleDef> out;
  for (const int top : {0, 1}) {
    for (const int left : {0, 1}) {
      NTupleDef def;
      for (int r = top; r < top + 2; ++r)
        for (int c = left; c < left + 3; ++c) def.cells.push_back(r * 4 + c);
      out.push_back(std::move(def));
    }
  }
  return out;
}

}  // namespace

std::vector<NTupleDef> random_walk_tuples(const Game& g, int count, int length, std::uint64_t seed) {
  if (length < 1 || length > g.num_cells())
    throw std::invalid_argument("tuple length must be in 1..board size");
  const auto adj = adjacency(g);
  Rng rng(splitmix64(seed));
  std::vector<NTupleDef> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) {
    NTupleDef def;
    int cur = rng.below(g.num_cells());
    def.cells.push_back(cur);
    while (def.size() < length) {
      // walk from the current cell, collecting cells not seen before;
      // revisits move the walker without growing the tuple
      const auto& nb = adj[static_cast<std::size_t>(cur)];
      cur = nb[static_cast<std::size_t>(rng.below(static_cast<int>(nb.size())))];
      if (std::find(def.cells.begin(), def.cells.end(), cur) == def.cells.end())
        def.cells.push_back(cur);
    }
    out.push_back(std::move(def));
  }
  return out;
}

std::vector<NTupleDef> default_tuples(const Game& g, std::uint64_t seed) {
  switch (g.spec().name) {
    case GameName::tictactoe: {
      NTupleDef def = full_board_tuple(g);
      Rng rng(splitmix64(seed));
      for (int i = 8; i > 0; --i) std::swap(def.cells[static_cast<std::size_t>(i)],
                                            def.cells[static_cast<std::size_t>(rng.below(i + 1))]);
      return {def};
    }
    case GameName::nim: return {full_board_tuple(g)};
    case GameName::nim3p: return {full_board_tuple(g), full_board_tuple(g)};
    case GameName::connect_four: return random_walk_tuples(g, 70, 8, seed);
    case GameName::hex: return random_walk_tuples(g, 25, 6, seed);
    case GameName::othello: return random_walk_tuples(g, 50, 6, seed);
    case GameName::g2048: return rects_2x3();
  }
  throw std::invalid_argument("unknown game");
}

std::vector<NTupleDef> tuples_from_spec(const Game& g, const std::string& spec, std::uint64_t seed) {
  if (spec.empty() || spec == "default") return default_tuples(g, seed);
  if (spec == "full") return {full_board_tuple(g)};
  if (spec == "rects2x3") {
    if (g.spec().name != GameName::g2048)
      throw std::invalid_argument("rects2x3 tuples are specific to 2048");
    return rects_2x3();
  }
  if (spec.rfind("copies:", 0) == 0) {
    const int k = std::stoi(spec.substr(7));
    if (k < 1) throw std::invalid_argument("copies:<k> needs k >= 1");
    std::vector<NTupleDef> out;
    for (int i = 0; i < k; ++i) out.push_back(full_board_tuple(g));
    return out;
  }
  if (spec.rfind("random:", 0) == 0) {
    const auto body = spec.substr(7);
    const auto x = body.find('x');
    if (x == std::string::npos)
      throw std::invalid_argument("random tuple spec must be random:<count>x<len>");
    return random_walk_tuples(g, std::stoi(body.substr(0, x)), std::stoi(body.substr(x + 1)), seed);
  }
  throw std::invalid_argument("unknown tuple spec '" + spec + "'");
}

}  // namespace farl::games
