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

#include "femtoq/metrics.hpp"

#include <istream>
#include <ostream>

#include "femtoq/errors.hpp"
#include "femtoq/format.hpp"

namespace femtoq {

std::string metrics_csv_header(int fbs_count) {
  std::string h = "frame,time_s,c_m,c_0";
  for (int n = 1; n <= fbs_count; ++n) h += ",c_n_" + std::to_string(n);
  for (int n = 1; n <= fbs_count; ++n) h += ",action_" + std::to_string(n);
  h += ",state,epsilon";
  for (int n = 1; n <= fbs_count; ++n) h += ",reward_" + std::to_string(n);
  return h;
}

namespace {

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, double>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

std::optional<double> optional_number(const std::string& field) {
  if (field.empty()) return std::nullopt;
  return parse_double(field);
}

}  // namespace

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records, int fbs_count) {
  out << metrics_csv_header(fbs_count) << '\n';
  const auto n = static_cast<std::size_t>(fbs_count);
  for (const auto& r : records) {
    out << r.frame << ',' << format_double(r.time_s) << ',' << format_double(r.c_m) << ',' << format_double(r.c_0);
    for (std::size_t i = 0; i < n; ++i) out << ',' << (i < r.c_n.size() ? cell(r.c_n[i]) : "");
    for (std::size_t i = 0; i < n; ++i) out << ',' << (i < r.action.size() ? cell(r.action[i]) : "");
    out << ',' << state_index(r.state) << ',' << format_double(r.epsilon);
    for (std::size_t i = 0; i < n; ++i) out << ',' << (i < r.reward.size() ? cell(r.reward[i]) : "");
    out << '\n';
  }
}

std::vector<MetricsRecord> read_metrics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("metrics CSV: empty input");
  const auto header = split_csv_line(line);
  if (header.size() < 6 || (header.size() - 6) % 3 != 0) throw ConfigError("metrics CSV: unexpected header");
  const int n = static_cast<int>(header.size() - 6) / 3;
  if (line.rfind(metrics_csv_header(n), 0) != 0) throw ConfigError("metrics CSV: header does not match the metrics layout");

  std::vector<MetricsRecord> records;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) throw ConfigError("metrics CSV: ragged row at frame line " + std::to_string(records.size() + 2));
    try {
      MetricsRecord r;
      r.frame = static_cast<int>(parse_double(f[0]));
      r.time_s = parse_double(f[1]);
      r.c_m = parse_double(f[2]);
      r.c_0 = parse_double(f[3]);
      std::size_t at = 4;
      for (int i = 0; i < n; ++i) r.c_n.push_back(optional_number(f[at++]));
      for (int i = 0; i < n; ++i) {
        const auto a = optional_number(f[at++]);
        r.action.push_back(a ? std::optional<int>(static_cast<int>(*a)) : std::nullopt);
      }
      r.state = parse_double(f[at++]) != 0.0 ? LearningState::Interfered : LearningState::Clear;
      r.epsilon = parse_double(f[at++]);
      for (int i = 0; i < n; ++i) r.reward.push_back(optional_number(f[at++]));
      r.greedy.assign(static_cast<std::size_t>(n), std::nullopt);
      records.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("metrics CSV: ") + e.what());
    }
  }
  return records;
}

}  // namespace femtoq
