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

// Tabular Q-learning for FBS power allocation.
//
// The environment state is the binary interference flag at the macro cell,
// the action is a power level per subchannel, and every FBS keeps its own
// 2 x |actions| table. Independent agents pick the argmax of their own row;
// cooperative agents pick the argmax of the element-wise sum of all rows.

#ifndef FEMTOQ_LEARNING_HPP_
#define FEMTOQ_LEARNING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "femtoq/channel.hpp"
#include "femtoq/errors.hpp"

namespace femtoq {

/// Interference flag observed at the macro cell: 1 iff c_m is below target.
enum class LearningState : int { Clear = 0, Interfered = 1 };

inline constexpr int kStateCount = 2;

inline int state_index(LearningState s) { return static_cast<int>(s); }

LearningState observe_state(double c_m, double target);

/// exp(-(c_m - target)^2) - exp(-c_n); lies in (-1, 1].
double compute_reward(double c_m, double target, double c_n);

/// Every k-tuple over the power level set, in lexicographic order with
/// subchannel 0 as the most significant digit. Index 0 is the all-minimum tuple.
class ActionSpace {
 public:
  ActionSpace() = default;
  ActionSpace(std::vector<double> levels_db, int subchannels);

  /// 0:5:30 dB over two subchannels.
  static ActionSpace defaults();

  const std::vector<double>& levels_db() const { return levels_db_; }
  int subchannels() const { return subchannels_; }
  int size() const { return size_; }

  PowerAction action(int index) const;
  int index_of(const PowerAction& action) const;
  bool contains_level(double level_db) const;
  int level_index(double level_db) const;

 private:
  std::vector<double> levels_db_;
  int subchannels_ = 0;
  int size_ = 0;
};

/// Q-values over (state, action), plus the learning rate and discount.
template <typename Scalar>
class QTableT {
 public:
  using Values = Eigen::Matrix<Scalar, kStateCount, Eigen::Dynamic>;
  using Row = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  QTableT() = default;
  QTableT(int actions, Scalar alpha, Scalar gamma) : values_(Values::Zero(kStateCount, actions)), alpha_(alpha), gamma_(gamma) {
    if (actions < 1) throw ConfigError("Q-table needs at least one action");
    if (!(alpha > Scalar(0) && alpha <= Scalar(1))) throw ConfigError("alpha must lie in (0, 1]");
    if (!(gamma >= Scalar(0) && gamma < Scalar(1))) throw ConfigError("gamma must lie in [0, 1)");
  }

  int actions() const { return static_cast<int>(values_.cols()); }
  Scalar alpha() const { return alpha_; }
  Scalar gamma() const { return gamma_; }
  const Values& values() const { return values_; }
  Values& values() { return values_; }

  Scalar operator()(LearningState s, int action) const { return values_(state_index(s), action); }
  Scalar& operator()(LearningState s, int action) { return values_(state_index(s), action); }
  Row row(LearningState s) const { return values_.row(state_index(s)).transpose(); }

 private:
  Values values_;
  Scalar alpha_ = Scalar(0.5);
  Scalar gamma_ = Scalar(0.9);
};

using QTable = QTableT<double>;

/// Q(s,a) <- (1 - alpha) Q(s,a) + alpha [R + gamma max_a' Q(s', a')].
template <typename Scalar>
void q_update_in_place(QTableT<Scalar>& table, LearningState state, int action, Scalar reward, LearningState next_state) {
  if (action < 0 || action >= table.actions()) {
    throw std::out_of_range("q_update: action " + std::to_string(action) + " outside [0, " +
                            std::to_string(table.actions()) + ")");
  }
  const Scalar best_next = table.values().row(state_index(next_state)).maxCoeff();
  Scalar& q = table(state, action);
  q = (Scalar(1) - table.alpha()) * q + table.alpha() * (reward + table.gamma() * best_next);
  if (!std::isfinite(static_cast<double>(q))) throw NumericError("q_update produced a non-finite value");
}

template <typename Scalar>
QTableT<Scalar> q_update(QTableT<Scalar> table, LearningState state, int action, Scalar reward, LearningState next_state) {
  q_update_in_place(table, state, action, reward, next_state);
  return table;
}

/// Index of the largest entry; the lowest index wins ties.
template <typename Derived>
int argmax_lowest(const Eigen::DenseBase<Derived>& v) {
  int best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) best = static_cast<int>(i);
  }
  return best;
}

/// Epsilon-greedy over the table row for `state`.
int select_action_independent(const QTable& table, LearningState state, double epsilon, Rng& rng);

/// Argmax of the element-wise sum of every FBS's current-state row.
int select_action_cooperative(std::span<const Eigen::VectorXd> q_rows);

struct ExplorationConfig {
  double epsilon_initial = 1.0;
  double epsilon_decay = 0.99;
  double epsilon_min = 0.01;

  double next(double epsilon) const { return std::max(epsilon_min, epsilon * epsilon_decay); }
};

struct LearnerConfig {
  double target_capacity_b0 = 11.0;
  double alpha = 0.5;
  double gamma = 0.9;
  ActionSpace action_space = ActionSpace::defaults();
  ExplorationConfig exploration;

  /// Human-readable violations; empty when valid.
  std::vector<std::string> violations() const;
};

/// CSV with one row per state and one column per action index.
void write_qtable_csv(std::ostream& out, const QTable& table);
QTable read_qtable_csv(std::istream& in, double alpha, double gamma);

}  // namespace femtoq

#endif  // FEMTOQ_LEARNING_HPP_
