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

#include "femtoq/baselines.hpp"

#include <ostream>

#include "femtoq/format.hpp"

namespace femtoq {

std::vector<PowerAction> equal_power_action(double level_db, const ActionSpace& space, int fbs_count) {
  if (!space.contains_level(level_db)) {
    throw ConfigError("equal power level " + format_double(level_db) + " dB is not in the configured set");
  }
  return std::vector<PowerAction>(static_cast<std::size_t>(fbs_count), uniform_action(level_db, space.subchannels()));
}

TransmitProfile joint_profile(const TransmitProfile& fixed, const ActionSpace& space, const std::vector<int>& joint_action) {
  TransmitProfile profile = fixed;
  for (std::size_t i = 0; i < joint_action.size(); ++i) {
    profile.set(NodeId::fbs(static_cast<int>(i) + 1), space.action(joint_action[i]));
  }
  return profile;
}

OracleResult exhaustive_search(const GainMatrix& channel, const TransmitProfile& fixed, const ActionSpace& space,
                               double target, double slack, std::vector<GridPoint>* grid) {
  const int n = channel.fbs_count();
  if (n < 1) throw ConfigError("exhaustive search needs at least one FBS");
  if (space.subchannels() != channel.subchannels()) throw ConfigError("action space and channel disagree on subchannels");

  std::vector<int> joint(static_cast<std::size_t>(n), 0);
  OracleResult feasible_best;
  OracleResult fallback;  // max c_m, then max c_0
  bool have_fallback = false;
  std::int64_t evaluations = 0;

  while (true) {
    const CapacityReport report = compute_capacities(joint_profile(fixed, space, joint), channel);
    ++evaluations;
    const bool ok = report.c_m >= target - slack;
    if (grid) grid->push_back(GridPoint{joint, report.c_0, report.c_m, ok});

    if (ok && (!feasible_best.feasible || report.c_0 > feasible_best.best_c0)) {
      feasible_best = OracleResult{joint, report.c_0, report.c_m, 0, true};
    }
    if (!have_fallback || report.c_m > fallback.best_cm ||
        (report.c_m == fallback.best_cm && report.c_0 > fallback.best_c0)) {
      fallback = OracleResult{joint, report.c_0, report.c_m, 0, false};
      have_fallback = true;
    }

    // Odometer increment, last FBS fastest.
    int i = n - 1;
    while (i >= 0 && ++joint[static_cast<std::size_t>(i)] == space.size()) joint[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }

  OracleResult result = feasible_best.feasible ? feasible_best : fallback;
  result.evaluations = evaluations;
  return result;
}

namespace {

std::string joint_label(const std::vector<int>& joint) {
  std::string s;
  for (std::size_t i = 0; i < joint.size(); ++i) s += (i ? " " : "") + std::to_string(joint[i]);
  return s;
}

}  // namespace

void write_grid_csv(std::ostream& out, const std::vector<GridPoint>& grid) {
  out << "joint_action,c_0,c_m,feasible\n";
  for (const auto& p : grid) {
    out << joint_label(p.joint_action) << ',' << format_double(p.c0) << ',' << format_double(p.cm) << ','
        << (p.feasible ? 1 : 0) << '\n';
  }
}

void write_oracle_csv(std::ostream& out, const OracleResult& result, const ActionSpace& space) {
  out << "joint_action,levels_db,c_0,c_m,feasible,evaluations\n";
  std::string levels;
  for (std::size_t i = 0; i < result.best_joint_action.size(); ++i) {
    const auto a = space.action(result.best_joint_action[i]);
    for (std::size_t k = 0; k < a.levels_db.size(); ++k) {
      levels += (levels.empty() ? "" : (k == 0 ? " | " : " ")) + format_double(a.levels_db[k]);
    }
  }
  out << joint_label(result.best_joint_action) << ',' << levels << ',' << format_double(result.best_c0) << ','
      << format_double(result.best_cm) << ',' << (result.feasible ? 1 : 0) << ',' << result.evaluations << '\n';
}

}  // namespace femtoq
