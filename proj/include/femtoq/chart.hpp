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

// Self-contained SVG line charts of metrics CSV columns.

#ifndef FEMTOQ_CHART_HPP_
#define FEMTOQ_CHART_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace femtoq {

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartSpec {
  std::vector<std::filesystem::path> inputs;
  std::string column = "c_m";  // c_m, c_0 or c_n_<N>
  std::optional<double> reference;  // horizontal line, normally the target capacity
  std::string title;
  std::string config_hash;
  std::string seed;
};

/// Provenance written next to a metrics CSV as <csv>.meta.json.
struct RunMeta {
  std::string config_hash;
  std::string seed;
  std::string algorithm;
  double target_capacity = 0.0;
};

std::filesystem::path meta_path_for(const std::filesystem::path& csv);
void write_run_meta(const std::filesystem::path& csv, const RunMeta& meta);
std::optional<RunMeta> read_run_meta(const std::filesystem::path& csv);

/// Reads `column` against `frame` from a CSV; blank cells are skipped.
ChartSeries load_series(std::istream& in, const std::string& column, const std::string& label);

std::string render_svg(const ChartSpec& spec, const std::vector<ChartSeries>& series);

}  // namespace femtoq

#endif  // FEMTOQ_CHART_HPP_
