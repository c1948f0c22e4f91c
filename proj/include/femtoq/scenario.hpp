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

// Scenario files, run orchestration, sweeps, and the run summaries.

#ifndef FEMTOQ_SCENARIO_HPP_
#define FEMTOQ_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "femtoq/baselines.hpp"
#include "femtoq/channel.hpp"
#include "femtoq/learning.hpp"
#include "femtoq/mac.hpp"
#include "femtoq/metrics.hpp"

namespace femtoq {

struct FbsSpec {
  int join_frame = 0;
  std::optional<std::array<double, 2>> position;  // path-loss channels only
  double fu_distance = 1.0;                        // FBS -> FU distance for the serving link
};

struct PathLossSpec {
  double g0 = 1.0;
  double d0 = 1.0;
  double exponent = 3.0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  double mbs_power_db = 20.0;
  double mu_power_db = 20.0;
  std::optional<std::array<double, 2>> mbs_position;
  std::optional<std::array<double, 2>> mu_position;
  std::vector<FbsSpec> fbs;
  GainMatrix channel;                     // resolved gains, whichever way they were specified
  std::optional<PathLossSpec> path_loss;  // set when the gains came from geometry
  FrameSchedule schedule;
  Algorithm algorithm = Algorithm::PdpaQ;
  LearnerConfig learner;
  EstimationMode estimation;
  int frames = 300;
  std::uint64_t seed = 1;
  double equal_power_db = 15.0;
  double oracle_slack = 0.0;
  double aloha_probability = 0.5;

  int fbs_count() const { return static_cast<int>(fbs.size()); }
  std::vector<std::string> violations() const;
  MacConfig mac_config() const;
  /// MBS and MU transmit profile used by the oracle.
  TransmitProfile fixed_profile() const;
};

/// Parses a scenario document; unknown keys and every invalid field are reported together.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Canonical YAML of the resolved scenario, seed excluded.
std::string canonical_scenario(const ScenarioConfig& config);
/// 16 hex digits identifying the canonical scenario.
std::string scenario_hash(const ScenarioConfig& config);

/// Runs `config.frames` frames. With `trace` set, every MAC message is written as one JSON line.
std::vector<MetricsRecord> run_scenario(const ScenarioConfig& config, std::ostream* trace = nullptr);

void write_trace_line(std::ostream& out, const MacMessage& message);

struct WindowMeans {
  double c_m = 0.0;
  double c_0 = 0.0;
  int frames = 0;
};

/// Means over the last 20% of the records (at least one record).
WindowMeans final_window(const std::vector<MetricsRecord>& records);

/// First frame from which the greedy action of FBS `fbs_index` never changes again.
std::optional<int> convergence_frame(const std::vector<MetricsRecord>& records, int fbs_index);

struct SweepRow {
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::PdpaQ;
  int frames = 0;
  WindowMeans window;
  std::vector<std::optional<int>> convergence;  // per FBS
  std::string error;                            // empty on success
};

/// Every (seed, algorithm) pair, one row each, ordered seed-major. Cells run on up to
/// `workers` threads (0 = hardware concurrency); a failing cell records its error.
std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const std::vector<std::uint64_t>& seeds,
                                const std::vector<Algorithm>& algorithms, unsigned workers = 0);

/// seed,algorithm,frames,final_c_m,final_c_0,convergence_1..N,error
void write_summary_csv(std::ostream& out, const std::vector<SweepRow>& rows, int fbs_count);

/// Oracle run for the scenario's true channel.
OracleResult run_oracle(const ScenarioConfig& config, std::vector<GridPoint>* grid = nullptr);

}  // namespace femtoq

#endif  // FEMTOQ_SCENARIO_HPP_
