#include "farl/ntuple/serialize.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace farl::ntuple {

namespace {

constexpr char kMagic[4] = {'N', 'T', 'N', 'F'};
constexpr std::uint32_t kVersion = 1;

std::array<std::uint32_t, 256> make_crc_table() {
  std::array<std::uint32_t, 256> table{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    table[i] = c;
  }
  return table;
}

const std::array<std::uint32_t, 256>& crc_table() {
  static const auto table = make_crc_table();
  return table;
}

// buffers everything and maintains the running checksum
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const void* data, std::size_t len) {
    crc_ = crc32(data, len, crc_);
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
  }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u32(std::uint32_t v) {
    std::uint8_t b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    bytes(b, 4);
  }
  void u64(std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    bytes(b, 8);
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void f64_array(std::span<const double> vals) {
    static_assert(std::endian::native == std::endian::little);
    bytes(vals.data(), vals.size() * sizeof(double));
  }
  std::uint32_t crc() const { return crc_; }
  void raw_u32(std::uint32_t v) {  // outside the checksum
    std::uint8_t b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    out_.write(reinterpret_cast<const char*>(b), 4);
  }

 private:
  std::ostream& out_;
  std::uint32_t crc_ = 0;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(void* data, std::size_t len) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in_.gcount()) != len)
      throw std::runtime_error("agent file truncated");
    crc_ = crc32(data, len, crc_);
  }
  std::uint8_t u8() {
    std::uint8_t v;
    bytes(&v, 1);
    return v;
  }
  std::uint32_t u32() {
    std::uint8_t b[4];
    bytes(b, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint8_t b[8];
    bytes(b, 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  void f64_array(std::span<double> vals) {
    static_assert(std::endian::native == std::endian::little);
    bytes(vals.data(), vals.size() * sizeof(double));
  }
  std::uint32_t crc() const { return crc_; }
  std::uint32_t raw_u32() {
    std::uint8_t b[4];
    in_.read(reinterpret_cast<char*>(b), 4);
    if (in_.gcount() != 4) throw std::runtime_error("agent file truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }

 private:
  std::istream& in_;
  std::uint32_t crc_ = 0;
};

}  // namespace

std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed) {
  const auto& table = crc_table();
  std::uint32_t c = seed ^ 0xFFFFFFFFu;
  const auto* p = static_cast<const std::uint8_t*>(data);
  for (std::size_t i = 0; i < len; ++i) c = table[(c ^ p[i]) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

std::uint32_t weight_checksum(const NTupleNetwork& net) {
  std::uint32_t c = 0;
  for (int i = 0; i < net.num_tuples(); ++i) {
    const auto lut = net.lut(i);
    c = crc32(lut.data(), lut.size() * sizeof(double), c);
  }
  return c;
}

void save_agent(std::ostream& out, const NTupleNetwork& net, const GameSpec& game,
                bool use_symmetry, double gamma) {
  Writer w(out);
  w.bytes(kMagic, 4);
  w.u32(kVersion);
  w.u8(static_cast<std::uint8_t>(game.name));
  w.i32(game.heaps);
  w.i32(game.stones);
  w.i32(game.hex_size);
  w.u8(static_cast<std::uint8_t>(net.mode()));
  w.u8(static_cast<std::uint8_t>(net.sigma()));
  w.u8(static_cast<std::uint8_t>(net.tcl().transfer));
  w.f64(net.tcl().beta);
  w.f64(net.tcl().init);
  w.u8(use_symmetry ? 1 : 0);
  w.f64(gamma);
  w.i32(net.cell_alphabet());
  w.i32(net.num_actions());
  w.u32(static_cast<std::uint32_t>(net.num_tuples()));
  for (int i = 0; i < net.num_tuples(); ++i) {
    const auto& t = net.tuple(i);
    w.u32(static_cast<std::uint32_t>(t.size()));
    for (const int c : t.cells) w.i32(c);
  }
  for (int i = 0; i < net.num_tuples(); ++i) w.f64_array(net.lut(i));
  if (net.tcl().enabled()) {
    for (int i = 0; i < net.num_tuples(); ++i) w.f64_array(net.tcl_accum_net(i));
    for (int i = 0; i < net.num_tuples(); ++i) w.f64_array(net.tcl_accum_abs(i));
  }
  for (int i = 0; i < net.num_tuples(); ++i) {
    const auto words = net.touched_words(i);
    w.u64(words.size());
    for (const std::uint64_t word : words) w.u64(word);
  }
  w.raw_u32(w.crc());
}

SavedAgent load_agent(std::istream& in) {
  Reader r(in);
  char magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("not an agent file (bad magic)");
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw std::runtime_error("unsupported agent format version " + std::to_string(version));

  GameSpec game;
  game.name = static_cast<GameName>(r.u8());
  game.heaps = r.i32();
  game.stones = r.i32();
  game.hex_size = r.i32();
  const auto mode = static_cast<NetMode>(r.u8());
  const auto sigma = static_cast<Sigma>(r.u8());
  TclConfig tcl;
  tcl.transfer = static_cast<TclTransfer>(r.u8());
  tcl.beta = r.f64();
  tcl.init = r.f64();
  const bool use_symmetry = r.u8() != 0;
  const double gamma = r.f64();
  const int alphabet = r.i32();
  const int num_actions = r.i32();
  const auto m = r.u32();
  std::vector<NTupleDef> tuples;
  for (std::uint32_t i = 0; i < m; ++i) {
    NTupleDef def;
    const auto n = r.u32();
    for (std::uint32_t k = 0; k < n; ++k) def.cells.push_back(r.i32());
    tuples.push_back(std::move(def));
  }

  NTupleNetwork net(mode, std::move(tuples), alphabet, num_actions, sigma, tcl);
  for (int i = 0; i < net.num_tuples(); ++i) r.f64_array(net.mutable_lut(i));
  if (tcl.enabled()) {
    for (int i = 0; i < net.num_tuples(); ++i) r.f64_array(net.mutable_tcl_accum_net(i));
    for (int i = 0; i < net.num_tuples(); ++i) r.f64_array(net.mutable_tcl_accum_abs(i));
  }
  std::vector<std::uint64_t> words;
  for (int i = 0; i < net.num_tuples(); ++i) {
    const std::uint64_t nwords = r.u64();
    words.resize(nwords);
    for (auto& word : words) word = r.u64();
    net.restore_touched(i, words);
  }
  const std::uint32_t expect = r.crc();
  const std::uint32_t stored = r.raw_u32();
  if (expect != stored) throw std::runtime_error("agent file checksum mismatch");
  return SavedAgent{game, use_symmetry, gamma, std::move(net)};
}

void save_agent(const std::string& path, const NTupleNetwork& net, const GameSpec& game,
                bool use_symmetry, double gamma) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  save_agent(out, net, game, use_symmetry, gamma);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

SavedAgent load_agent(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_agent(in);
}

}  // namespace farl::ntuple
