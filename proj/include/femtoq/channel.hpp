// Copyright 2026 The femtoq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Channel model, SINR / Shannon capacity, and probe-based power estimation.
//
// Nodes are laid out on a fixed axis used by every dense container here:
//   position 0 = MBS, position 1 = MU, position 1 + n = FBS n (n >= 1).
// A gain layer is a (tx position) x (rx position) matrix for one subchannel.
// Each FBS serves exactly one FU, and the FU is collapsed onto the FBS, so the
// diagonal entry of an FBS holds its serving (FBS -> FU) gain. The diagonal of
// MBS and MU is not a link and reading it is an error.

#ifndef FEMTOQ_CHANNEL_HPP_
#define FEMTOQ_CHANNEL_HPP_

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "femtoq/errors.hpp"

namespace femtoq {

using Rng = std::mt19937_64;

enum class NodeKind : std::uint8_t { Mbs = 0, Mu = 1, Fbs = 2 };

struct NodeId {
  NodeKind kind = NodeKind::Mbs;
  int index = 0;  // 0 for MBS/MU, n >= 1 for FBS n

  static constexpr NodeId mbs() { return {NodeKind::Mbs, 0}; }
  static constexpr NodeId mu() { return {NodeKind::Mu, 0}; }
  static constexpr NodeId fbs(int n) { return {NodeKind::Fbs, n}; }

  constexpr bool is_fbs() const { return kind == NodeKind::Fbs; }

  /// Position on the dense node axis.
  constexpr int position() const {
    switch (kind) {
      case NodeKind::Mbs: return 0;
      case NodeKind::Mu: return 1;
      case NodeKind::Fbs: return 1 + index;
    }
    return -1;
  }

  static constexpr NodeId at_position(int pos) {
    if (pos == 0) return mbs();
    if (pos == 1) return mu();
    return fbs(pos - 1);
  }

  std::string label() const;

  friend constexpr auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// Parses "mbs", "mu", "fbs3".
NodeId parse_node_id(std::string_view text);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

/// One transmit level (dB) per subchannel.
struct PowerAction {
  std::vector<double> levels_db;

  int subchannels() const { return static_cast<int>(levels_db.size()); }
  double linear(int subchannel) const { return db_to_linear(levels_db.at(subchannel)); }

  friend bool operator==(const PowerAction&, const PowerAction&) = default;
};

inline PowerAction uniform_action(double level_db, int subchannels) {
  return PowerAction{std::vector<double>(static_cast<std::size_t>(subchannels), level_db)};
}

/// Who transmits with what power. Absent nodes are silent.
class TransmitProfile {
 public:
  void set(NodeId node, PowerAction action) { actions_[node] = std::move(action); }
  void erase(NodeId node) { actions_.erase(node); }
  bool active(NodeId node) const { return actions_.contains(node); }
  const PowerAction& action(NodeId node) const;
  double linear_power(NodeId node, int subchannel) const { return action(node).linear(subchannel); }
  const std::map<NodeId, PowerAction>& entries() const { return actions_; }

 private:
  std::map<NodeId, PowerAction> actions_;
};

/// Directed linear power gains per subchannel plus the receiver noise power.
/// Unset entries are NaN until assigned.
template <typename Scalar>
class GainMatrixT {
 public:
  using Layer = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  GainMatrixT() = default;
  GainMatrixT(int fbs_count, int subchannels, Scalar noise_power)
      : fbs_count_(fbs_count), noise_power_(noise_power) {
    if (fbs_count < 0) throw ConfigError("gain matrix: negative FBS count");
    if (subchannels < 1) throw ConfigError("gain matrix: need at least one subchannel");
    if (!(noise_power > Scalar(0)) || !std::isfinite(static_cast<double>(noise_power))) {
      throw ConfigError("gain matrix: noise_power must be finite and > 0");
    }
    const int n = node_count();
    layers_.assign(static_cast<std::size_t>(subchannels),
                   Layer::Constant(n, n, std::numeric_limits<Scalar>::quiet_NaN()));
  }

  int fbs_count() const { return fbs_count_; }
  int node_count() const { return fbs_count_ + 2; }
  int subchannels() const { return static_cast<int>(layers_.size()); }
  Scalar noise_power() const { return noise_power_; }
  const Layer& layer(int subchannel) const { return layers_.at(static_cast<std::size_t>(subchannel)); }

  void set_gain(NodeId tx, NodeId rx, int subchannel, Scalar g) {
    if (tx == rx) throw ConfigError("gain matrix: self gain " + tx.label() + " -> " + rx.label() + " is not a link");
    store(tx, rx, subchannel, g);
  }

  /// Serving gain of the femto link FBS n -> its FU.
  void set_femto_serving_gain(int fbs, int subchannel, Scalar g) {
    store(NodeId::fbs(fbs), NodeId::fbs(fbs), subchannel, g);
  }

  bool has_gain(NodeId tx, NodeId rx, int subchannel) const {
    if (!in_range(tx, rx, subchannel)) return false;
    return !std::isnan(static_cast<double>(entry(tx, rx, subchannel)));
  }

  Scalar gain(NodeId tx, NodeId rx, int subchannel) const {
    if (tx == rx) throw ConfigError("gain matrix: self gain " + tx.label() + " -> " + rx.label() + " queried");
    return checked(tx, rx, subchannel);
  }

  /// Gain of the link that serves `receiver`: MBS -> MU for the MU, FBS n -> FU n for FBS n.
  Scalar serving_gain(NodeId receiver, int subchannel) const {
    switch (receiver.kind) {
      case NodeKind::Mu: return gain(NodeId::mbs(), NodeId::mu(), subchannel);
      case NodeKind::Fbs: return checked(receiver, receiver, subchannel);
      case NodeKind::Mbs: break;
    }
    throw ScenarioError("the MBS is a transmitter only and has no serving link");
  }

 private:
  bool in_range(NodeId tx, NodeId rx, int subchannel) const {
    const int n = node_count();
    return subchannel >= 0 && subchannel < subchannels() && tx.position() >= 0 && tx.position() < n &&
           rx.position() >= 0 && rx.position() < n;
  }

  Scalar entry(NodeId tx, NodeId rx, int subchannel) const {
    return layers_[static_cast<std::size_t>(subchannel)](tx.position(), rx.position());
  }

  Scalar checked(NodeId tx, NodeId rx, int subchannel) const {
    if (!has_gain(tx, rx, subchannel)) {
      throw ConfigError("missing gain (" + tx.label() + ", " + rx.label() + ", subchannel " +
                        std::to_string(subchannel) + ")");
    }
    return entry(tx, rx, subchannel);
  }

  void store(NodeId tx, NodeId rx, int subchannel, Scalar g) {
    if (!in_range(tx, rx, subchannel)) {
      throw ConfigError("gain (" + tx.label() + ", " + rx.label() + ", subchannel " + std::to_string(subchannel) +
                        ") outside the network");
    }
    if (!std::isfinite(static_cast<double>(g)) || g < Scalar(0)) {
      throw ConfigError("gain (" + tx.label() + ", " + rx.label() + ") must be finite and >= 0");
    }
    layers_[static_cast<std::size_t>(subchannel)](tx.position(), rx.position()) = g;
  }

  int fbs_count_ = 0;
  Scalar noise_power_ = Scalar(1);
  std::vector<Layer> layers_;
};

using GainMatrix = GainMatrixT<double>;

/// The transmitter a receiver is listening to.
inline NodeId serving_transmitter(NodeId receiver) {
  if (receiver.kind == NodeKind::Mu) return NodeId::mbs();
  if (receiver.kind == NodeKind::Fbs) return receiver;
  throw ScenarioError("the MBS is a transmitter only and has no serving link");
}

/// Serving power x gain over noise plus every other active transmitter's power x gain.
/// The receiver itself never interferes with its own reception.
template <typename Scalar>
Scalar compute_sinr(NodeId receiver, int subchannel, const TransmitProfile& profile,
                    const GainMatrixT<Scalar>& channel) {
  const NodeId serving = serving_transmitter(receiver);
  if (!profile.active(serving)) {
    throw ScenarioError("serving transmitter " + serving.label() + " of " + receiver.label() + " is inactive");
  }
  const Scalar signal = Scalar(profile.linear_power(serving, subchannel)) * channel.serving_gain(receiver, subchannel);
  Scalar interference = channel.noise_power();
  for (const auto& [tx, action] : profile.entries()) {
    if (tx == serving || tx == receiver) continue;
    interference += Scalar(action.linear(subchannel)) * channel.gain(tx, receiver, subchannel);
  }
  return signal / interference;
}

struct CapacityReport {
  std::map<std::pair<NodeId, int>, double> per_node_sinr;
  double c_m = 0.0;
  std::map<int, double> c_n;  // keyed by FBS index
  double c_0 = 0.0;
};

/// Sum over subchannels of log2(1 + SINR) at `receiver`.
template <typename Scalar>
Scalar link_capacity(NodeId receiver, const TransmitProfile& profile, const GainMatrixT<Scalar>& channel) {
  Scalar total = Scalar(0);
  for (int k = 0; k < channel.subchannels(); ++k) total += std::log2(Scalar(1) + compute_sinr(receiver, k, profile, channel));
  return total;
}

/// Macro capacity at the MU and the femto capacity of every active FBS.
CapacityReport compute_capacities(const TransmitProfile& profile, const GainMatrix& channel);

/// Log-distance path loss: g0 * (d0 / d)^exponent, with d clamped to at least d0.
inline double path_loss_gain(double g0, double d0, double exponent, double distance) {
  const double d = std::max(distance, d0);
  return g0 * std::pow(d0 / d, exponent);
}

struct ProbeEstimate {
  double signal_power = 0.0;
  double noise_power = 0.0;
};

/// Mean of the probe outcomes is the signal power, their sample variance (N - 1) the noise power.
ProbeEstimate probe_estimate(std::span<const double> samples);

/// Emulated probe outcomes: true_power + N(0, sqrt(noise_power)), clamped at zero.
std::vector<double> synthesize_probe_samples(double true_power, double noise_power, int count, Rng& rng);

}  // namespace femtoq

#endif  // FEMTOQ_CHANNEL_HPP_
