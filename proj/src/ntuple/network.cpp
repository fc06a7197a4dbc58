#include "farl/ntuple/network.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace farl::ntuple {

double tcl_rate(double accum_net, double accum_abs, TclTransfer transfer, double beta) {
  if (accum_abs == 0.0) return 1.0;  // virgin weight
  const double ratio = std::abs(accum_net) / accum_abs;
  switch (transfer) {
    case TclTransfer::none: return 1.0;
    case TclTransfer::identity: return ratio;
    case TclTransfer::exponential: return std::exp(beta * (ratio - 1.0));
  }
  return 1.0;
}

int horizon_length(double lambda, double cut, int cap) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must be in [0,1]");
  if (cut <= 0.0 || cut >= 1.0) throw std::invalid_argument("horizon cut must be in (0,1)");
  if (lambda == 0.0) return 0;
  if (lambda == 1.0) {
    if (cap < 0) throw std::invalid_argument("lambda = 1 needs an explicit horizon cap");
    return cap;
  }
  const int h = static_cast<int>(std::floor(std::log(cut) / std::log(lambda)));
  return cap >= 0 ? std::min(h, cap) : h;
}

EligibilityHorizon::EligibilityHorizon(int h, double lambda, EligMode mode)
    : ring_(static_cast<std::size_t>(h) + 1), h_(h), lambda_(lambda), mode_(mode) {
  if (h < 0) throw std::invalid_argument("horizon must be >= 0");
  lambda_pow_.resize(static_cast<std::size_t>(h) + 1);
  double p = 1.0;
  for (int k = 0; k <= h; ++k) {
    lambda_pow_[static_cast<std::size_t>(k)] = p;
    p *= lambda;
  }
}

void EligibilityHorizon::clear() {
  head_ = -1;
  count_ = 0;
}

void EligibilityHorizon::push_swap(SymmetrySet& orbit, ActionId action, bool random_generated) {
  head_ = (head_ + 1) % static_cast<int>(ring_.size());
  Entry& slot = ring_[static_cast<std::size_t>(head_)];
  slot.orbit.states.swap(orbit.states);
  slot.orbit.action_maps.swap(orbit.action_maps);
  slot.orbit.action_stride = orbit.action_stride;
  slot.action = action;
  slot.random_generated = random_generated;
  if (count_ < static_cast<int>(ring_.size())) ++count_;
}

const EligibilityHorizon::Entry& EligibilityHorizon::entry(int k) const {
  assert(k >= 0 && k < count_);
  const int n = static_cast<int>(ring_.size());
  return ring_[static_cast<std::size_t>((head_ - k % n + n) % n)];
}

NTupleNetwork::NTupleNetwork(NetMode mode, std::vector<NTupleDef> tuples, int cell_alphabet,
                             int num_actions, Sigma sigma, TclConfig tcl)
    : mode_(mode),
      sigma_(sigma),
      tcl_(tcl),
      cell_alphabet_(cell_alphabet),
      num_actions_(mode == NetMode::q_net ? num_actions : 1),
      tuples_(std::move(tuples)) {
  if (tuples_.empty()) throw std::invalid_argument("n-tuple network needs at least one tuple");
  if (cell_alphabet_ < 2) throw std::invalid_argument("cell alphabet must be >= 2");
  if (mode == NetMode::q_net && num_actions < 1)
    throw std::invalid_argument("q net needs the game's action alphabet");
  for (const auto& t : tuples_) {
    if (t.cells.empty()) throw std::invalid_argument("empty n-tuple");
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
      if (t.cells[i] < 0 || t.cells[i] >= kMaxCells)
        throw std::invalid_argument("n-tuple cell out of board bounds");
      for (std::size_t j = i + 1; j < t.cells.size(); ++j)
        if (t.cells[i] == t.cells[j]) throw std::invalid_argument("n-tuple cells must be distinct");
    }
    std::uint64_t size = 1;
    for (int k = 0; k < t.size(); ++k) size *= static_cast<std::uint64_t>(cell_alphabet_);
    lut_sizes_.push_back(size);
    const std::uint64_t total = size * static_cast<std::uint64_t>(num_actions_);
    luts_.emplace_back(total, 0.0);
    if (tcl_.enabled()) {
      tcl_n_.emplace_back(total, tcl_.init);
      tcl_a_.emplace_back(total, tcl_.init);
    }
    touched_.emplace_back((total + 63) / 64, 0);
    num_weights_ += total;
  }
}

std::uint64_t NTupleNetwork::lut_index(int tuple, const GameState& s) const {
  const auto& cells = tuples_[static_cast<std::size_t>(tuple)].cells;
  std::uint64_t idx = 0;
  std::uint64_t pw = 1;
  for (const int c : cells) {
    const std::uint8_t v = s.cells[static_cast<std::size_t>(c)];
    if (v >= cell_alphabet_)
      throw std::domain_error("cell value " + std::to_string(v) + " outside alphabet of size " +
                              std::to_string(cell_alphabet_));
    idx += v * pw;
    pw *= static_cast<std::uint64_t>(cell_alphabet_);
  }
  return idx;
}

double NTupleNetwork::activation(const SymmetrySet& orbit) const {
  assert(mode_ == NetMode::value_net);
  double nu = 0.0;
  for (int i = 0; i < num_tuples(); ++i) {
    const double* lut = luts_[static_cast<std::size_t>(i)].data();
    for (const auto& q : orbit.states) nu += lut[lut_index(i, q)];
  }
  return nu;
}

double NTupleNetwork::apply_sigma(double nu) const {
  return sigma_ == Sigma::identity ? nu : std::tanh(nu);
}

double NTupleNetwork::value(const SymmetrySet& orbit) const { return apply_sigma(activation(orbit)); }

double NTupleNetwork::slice_sum(int tuple, const SymmetrySet& orbit, ActionId a) const {
  const double* lut = luts_[static_cast<std::size_t>(tuple)].data();
  const std::uint64_t slice = lut_sizes_[static_cast<std::size_t>(tuple)];
  double sum = 0.0;
  for (int j = 0; j < orbit.size(); ++j) {
    const auto amap = orbit.action_map(j);
    const auto mapped = static_cast<std::uint64_t>(amap[static_cast<std::size_t>(a.value())]);
    sum += lut[mapped * slice + lut_index(tuple, orbit.states[static_cast<std::size_t>(j)])];
  }
  return sum;
}

double NTupleNetwork::activation_q(const SymmetrySet& orbit, ActionId a) const {
  assert(mode_ == NetMode::q_net);
  assert(orbit.has_action_maps());
  double nu = 0.0;
  for (int i = 0; i < num_tuples(); ++i) nu += slice_sum(i, orbit, a);
  return nu;
}

double NTupleNetwork::q_value(const SymmetrySet& orbit, ActionId a) const {
  return apply_sigma(activation_q(orbit, a));
}

void NTupleNetwork::q_values(const SymmetrySet& orbit, std::span<const ActionId> actions,
                             std::vector<double>& out) const {
  out.clear();
  out.reserve(actions.size());
  for (const ActionId a : actions) out.push_back(q_value(orbit, a));
}

void NTupleNetwork::bump_touched(int tuple, std::uint64_t flat_index) {
  auto& words = touched_[static_cast<std::size_t>(tuple)];
  const std::uint64_t bit = 1ull << (flat_index & 63);
  std::uint64_t& word = words[flat_index >> 6];
  if (!(word & bit)) {
    word |= bit;
    ++num_touched_;
  }
}

void NTupleNetwork::restore_touched(int i, std::span<const std::uint64_t> words) {
  auto& dst = touched_[static_cast<std::size_t>(i)];
  if (words.size() != dst.size()) throw std::invalid_argument("touched bitset size mismatch");
  for (std::size_t w = 0; w < dst.size(); ++w) {
    num_touched_ -= static_cast<std::uint64_t>(__builtin_popcountll(dst[w]));
    dst[w] = words[w];
    num_touched_ += static_cast<std::uint64_t>(__builtin_popcountll(dst[w]));
  }
}

void td_lambda_update(NTupleNetwork& net, const EligibilityHorizon& horizon, double delta,
                      double alpha, bool learn_from_random, bool random_generated) {
  if (!learn_from_random && random_generated) return;
  ++net.update_calls_;
  const int m = net.num_tuples();
  const bool q_mode = net.mode_ == NetMode::q_net;
  const bool use_tcl = net.tcl_.enabled();

  // inhibition buffer: per (entry, tuple), each index updated once
  std::uint64_t inhibited[128];

  const int depth = horizon.lambda() == 0.0 ? 1 : horizon.size();
  for (int k = 0; k < depth; ++k) {
    const auto& e = horizon.entry(k);
    const double lambda_pow = horizon.lambda_pow(k);
    if (lambda_pow == 0.0) break;
    const int ns = e.orbit.size();
    double sig_prime = 1.0;
    if (net.sigma_ == Sigma::tanh_sigmoid) {
      const double v = q_mode ? net.q_value(e.orbit, e.action) : net.value(e.orbit);
      sig_prime = 1.0 - v * v;
    }
    // recommended weight change, shared by every activated weight
    const double rec = delta * lambda_pow * sig_prime / (static_cast<double>(m) * static_cast<double>(ns));

    for (int i = 0; i < m; ++i) {
      double* lut = net.luts_[static_cast<std::size_t>(i)].data();
      const std::uint64_t slice = net.lut_sizes_[static_cast<std::size_t>(i)];
      int n_inhibited = 0;
      for (int j = 0; j < ns; ++j) {
        const GameState& q = e.orbit.states[static_cast<std::size_t>(j)];
        std::uint64_t idx = net.lut_index(i, q);
        if (q_mode) {
          const auto amap = e.orbit.action_map(j);
          idx += static_cast<std::uint64_t>(amap[static_cast<std::size_t>(e.action.value())]) * slice;
        }
        bool dup = false;
        for (int t = 0; t < n_inhibited; ++t)
          if (inhibited[t] == idx) {
            dup = true;
            break;
          }
        if (dup) continue;
        assert(n_inhibited < 128);
        inhibited[n_inhibited++] = idx;

        double rate = 1.0;
        if (use_tcl) {
          double& acc_n = net.tcl_n_[static_cast<std::size_t>(i)][idx];
          double& acc_a = net.tcl_a_[static_cast<std::size_t>(i)][idx];
          rate = tcl_rate(acc_n, acc_a, net.tcl_.transfer, net.tcl_.beta);
          acc_n += rec;
          acc_a += std::abs(rec);
        }
        lut[idx] += alpha * rate * rec;
        net.bump_touched(i, idx);
      }
    }
  }
}

}  // namespace farl::ntuple
