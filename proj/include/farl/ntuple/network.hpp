#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "farl/core/game.hpp"

namespace farl::ntuple {

// A fixed sequence of n board cells; their joint contents form an
// n-digit base-P number indexing this tuple's weight table.
struct NTupleDef {
  std::vector<int> cells;
  int size() const { return static_cast<int>(cells.size()); }
};

enum class NetMode : std::uint8_t { value_net = 0, q_net = 1 };
enum class Sigma : std::uint8_t { identity = 0, tanh_sigmoid = 1 };
enum class TclTransfer : std::uint8_t { none = 0, identity = 1, exponential = 2 };
enum class EligMode : std::uint8_t { et = 0, reset = 1 };

// Temporal coherence: per-weight learning rates from the accumulated
// signed (N) and absolute (A) recommended weight changes. Both
// accumulators start at `init`, so untouched weights begin at rate 1.
struct TclConfig {
  TclTransfer transfer = TclTransfer::none;
  double beta = 2.7;   // exponential transfer only
  double init = 1e-4;
  bool enabled() const { return transfer != TclTransfer::none; }
};

// alpha_i of one weight. Identity: |N|/A. Exponential: e^(beta(|N|/A - 1)).
// A == 0 counts as a virgin weight and learns at full rate.
double tcl_rate(double accum_net, double accum_abs, TclTransfer transfer, double beta);

// Number of additional past afterstates kept by the finite-horizon
// eligibility method: h = floor(log_lambda(cut)), h = 0 for lambda = 0.
// lambda = 1 needs an explicit cap >= 0; otherwise it is an error.
int horizon_length(double lambda, double cut, int cap = -1);

// Ring buffer of the learning player's last h+1 afterstates (V nets)
// or state/action pairs (Q nets), newest first, each with its symmetry
// orbit. Entry k gets weight lambda^k in TD(lambda) updates.
class EligibilityHorizon {
 public:
  struct Entry {
    SymmetrySet orbit;
    ActionId action;
    bool random_generated = false;
  };

  EligibilityHorizon(int h, double lambda, EligMode mode);

  void clear();
  // Installs `orbit` as the new head by swapping buffers; `orbit` comes
  // back holding the evicted entry's storage for reuse.
  void push_swap(SymmetrySet& orbit, ActionId action, bool random_generated);

  bool empty() const { return count_ == 0; }
  int size() const { return count_; }
  const Entry& entry(int k) const;  // k steps back from the head
  const Entry& head() const { return entry(0); }

  int h() const { return h_; }
  double lambda() const { return lambda_; }
  EligMode mode() const { return mode_; }
  double lambda_pow(int k) const { return lambda_pow_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<Entry> ring_;
  std::vector<double> lambda_pow_;
  int h_;
  int head_ = -1;
  int count_ = 0;
  double lambda_;
  EligMode mode_;
};

// The function approximator: m n-tuples over shared weight tables.
// Value nets map afterstates to one output; Q nets keep one table
// slice per action and map state/action pairs. Weights start at zero.
class NTupleNetwork {
 public:
  NTupleNetwork(NetMode mode, std::vector<NTupleDef> tuples, int cell_alphabet, int num_actions,
                Sigma sigma, TclConfig tcl);

  NetMode mode() const { return mode_; }
  Sigma sigma() const { return sigma_; }
  const TclConfig& tcl() const { return tcl_; }
  int num_tuples() const { return static_cast<int>(tuples_.size()); }
  const NTupleDef& tuple(int i) const { return tuples_[static_cast<std::size_t>(i)]; }
  int cell_alphabet() const { return cell_alphabet_; }
  int num_actions() const { return num_actions_; }

  // base-P code of the tuple's cells in state s (no action slice)
  std::uint64_t lut_index(int tuple, const GameState& s) const;

  // value-net output V(s') summed over the symmetry orbit, Eq-style:
  // sigma( sum_i sum_q w_i[Ind_i(q)] )
  double value(const SymmetrySet& orbit) const;
  double activation(const SymmetrySet& orbit) const;

  // Q-net outputs; the orbit must carry action maps
  double q_value(const SymmetrySet& orbit, ActionId a) const;
  double activation_q(const SymmetrySet& orbit, ActionId a) const;
  void q_values(const SymmetrySet& orbit, std::span<const ActionId> actions,
                std::vector<double>& out) const;

  double apply_sigma(double nu) const;

  std::uint64_t num_weights() const { return num_weights_; }
  std::uint64_t num_touched() const { return num_touched_; }
  double active_weight_fraction() const {
    return num_weights_ == 0 ? 0.0 : static_cast<double>(num_touched_) / static_cast<double>(num_weights_);
  }
  std::uint64_t update_calls() const { return update_calls_; }

  // raw tables (serialization, tests)
  std::span<const double> lut(int i) const { return luts_[static_cast<std::size_t>(i)]; }
  std::span<double> mutable_lut(int i) { return luts_[static_cast<std::size_t>(i)]; }
  std::span<const double> tcl_accum_net(int i) const { return tcl_n_[static_cast<std::size_t>(i)]; }
  std::span<const double> tcl_accum_abs(int i) const { return tcl_a_[static_cast<std::size_t>(i)]; }
  std::span<double> mutable_tcl_accum_net(int i) { return tcl_n_[static_cast<std::size_t>(i)]; }
  std::span<double> mutable_tcl_accum_abs(int i) { return tcl_a_[static_cast<std::size_t>(i)]; }
  std::span<const std::uint64_t> touched_words(int i) const { return touched_[static_cast<std::size_t>(i)]; }
  void restore_touched(int i, std::span<const std::uint64_t> words);

  // One TD(lambda) update: apply the error signal `delta` for the head
  // of `horizon` and its decayed predecessors. Every weight index is
  // changed at most once per (entry, tuple); with learn_from_random
  // unset, updates whose current afterstate came from a random
  // exploration move are skipped entirely.
  friend void td_lambda_update(NTupleNetwork& net, const EligibilityHorizon& horizon, double delta,
                               double alpha, bool learn_from_random, bool random_generated);

 private:
  double slice_sum(int tuple, const SymmetrySet& orbit, ActionId a) const;
  void bump_touched(int tuple, std::uint64_t flat_index);

  NetMode mode_;
  Sigma sigma_;
  TclConfig tcl_;
  int cell_alphabet_;
  int num_actions_;  // slices per tuple; 1 for value nets
  std::vector<NTupleDef> tuples_;
  std::vector<std::uint64_t> lut_sizes_;  // P^n per tuple (one slice)
  std::vector<std::vector<double>> luts_;
  std::vector<std::vector<double>> tcl_n_;
  std::vector<std::vector<double>> tcl_a_;
  std::vector<std::vector<std::uint64_t>> touched_;
  std::uint64_t num_weights_ = 0;
  std::uint64_t num_touched_ = 0;
  std::uint64_t update_calls_ = 0;
};

void td_lambda_update(NTupleNetwork& net, const EligibilityHorizon& horizon, double delta,
                      double alpha, bool learn_from_random, bool random_generated);

}  // namespace farl::ntuple
