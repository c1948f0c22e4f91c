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

#ifndef FEMTOQ_METRICS_HPP_
#define FEMTOQ_METRICS_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "femtoq/learning.hpp"

namespace femtoq {

/// Everything one completed frame reports. Per-FBS vectors are indexed by
/// FBS index - 1 and hold nullopt while that FBS is not yet admitted.
struct MetricsRecord {
  int frame = 0;
  double time_s = 0.0;  // simulated time at the end of the frame
  double c_m = 0.0;
  double c_0 = 0.0;
  std::vector<std::optional<double>> c_n;
  std::vector<std::optional<int>> action;  // action transmitted during this frame
  std::vector<std::optional<int>> greedy;  // greedy choice at this frame's QPA (not written to CSV)
  LearningState state = LearningState::Clear;
  double epsilon = 0.0;
  std::vector<std::optional<double>> reward;
};

/// frame,time_s,c_m,c_0,c_n_1..c_n_N,action_1..action_N,state,epsilon,reward_1..reward_N
std::string metrics_csv_header(int fbs_count);
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records, int fbs_count);
std::vector<MetricsRecord> read_metrics_csv(std::istream& in);

}  // namespace femtoq

#endif  // FEMTOQ_METRICS_HPP_
