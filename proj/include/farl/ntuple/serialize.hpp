#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "farl/core/types.hpp"
#include "farl/ntuple/network.hpp"

namespace farl::ntuple {

// Versioned binary agent container. Layout, all little-endian:
// magic "NTNF", u32 format version, game spec, net flags (mode, sigma,
// TCL config, symmetry flag, gamma), tuple definitions, then 8-byte
// float weight arrays, TCL accumulator arrays and touched bitsets,
// terminated by a CRC-32 over everything before it. Loading verifies
// magic, version and checksum before constructing anything.
struct SavedAgent {
  GameSpec game;
  bool use_symmetry = true;
  double gamma = 1.0;
  NTupleNetwork net;
};

void save_agent(std::ostream& out, const NTupleNetwork& net, const GameSpec& game,
                bool use_symmetry, double gamma);
void save_agent(const std::string& path, const NTupleNetwork& net, const GameSpec& game,
                bool use_symmetry, double gamma);

SavedAgent load_agent(std::istream& in);
SavedAgent load_agent(const std::string& path);

std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed = 0);

// CRC-32 of a network's weight tables; evaluation must leave it intact.
std::uint32_t weight_checksum(const NTupleNetwork& net);

}  // namespace farl::ntuple
