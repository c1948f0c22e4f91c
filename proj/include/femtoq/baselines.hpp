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

// Non-learning comparators: equal power and the exhaustive joint-action search.

#ifndef FEMTOQ_BASELINES_HPP_
#define FEMTOQ_BASELINES_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "femtoq/channel.hpp"
#include "femtoq/learning.hpp"

namespace femtoq {

/// The same `level_db` on every subchannel for each of `fbs_count` FBSs.
std::vector<PowerAction> equal_power_action(double level_db, const ActionSpace& space, int fbs_count);

struct OracleResult {
  std::vector<int> best_joint_action;  // per FBS action index
  double best_c0 = 0.0;
  double best_cm = 0.0;
  std::int64_t evaluations = 0;
  bool feasible = false;
};

struct GridPoint {
  std::vector<int> joint_action;
  double c0 = 0.0;
  double cm = 0.0;
  bool feasible = false;
};

/// Profile with every FBS transmitting its entry of `joint_action`, on top of `fixed` (MBS, MU).
TransmitProfile joint_profile(const TransmitProfile& fixed, const ActionSpace& space, const std::vector<int>& joint_action);

/// Evaluates every joint action (FBS 1 is the most significant digit) on the true channel and
/// maximises c_0 subject to c_m >= target - slack. When nothing is feasible the result maximises
/// c_m, then c_0, and reports feasible = false. Ties go to the lowest joint index.
/// With `grid` non-null every evaluated point is appended in enumeration order.
OracleResult exhaustive_search(const GainMatrix& channel, const TransmitProfile& fixed, const ActionSpace& space,
                               double target, double slack = 0.0, std::vector<GridPoint>* grid = nullptr);

/// joint_action (space separated per FBS),c_0,c_m,feasible
void write_grid_csv(std::ostream& out, const std::vector<GridPoint>& grid);
void write_oracle_csv(std::ostream& out, const OracleResult& result, const ActionSpace& space);

}  // namespace femtoq

#endif  // FEMTOQ_BASELINES_HPP_
