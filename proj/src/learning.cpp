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

#include "femtoq/learning.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "femtoq/format.hpp"

namespace femtoq {

LearningState observe_state(double c_m, double target) {
  if (!std::isfinite(c_m)) throw NumericError("observe_state: non-finite macro capacity");
  return c_m < target ? LearningState::Interfered : LearningState::Clear;
}

double compute_reward(double c_m, double target, double c_n) {
  const double miss = c_m - target;
  return std::exp(-miss * miss) - std::exp(-c_n);
}

ActionSpace::ActionSpace(std::vector<double> levels_db, int subchannels)
    : levels_db_(std::move(levels_db)), subchannels_(subchannels) {
  if (levels_db_.empty()) throw ConfigError("action space: empty power level set");
  if (subchannels_ < 1) throw ConfigError("action space: need at least one subchannel");
  for (std::size_t i = 1; i < levels_db_.size(); ++i) {
    if (!(levels_db_[i] > levels_db_[i - 1])) throw ConfigError("action space: power levels must be strictly increasing");
  }
  size_ = 1;
  for (int k = 0; k < subchannels_; ++k) size_ *= static_cast<int>(levels_db_.size());
}

ActionSpace ActionSpace::defaults() { return ActionSpace({0, 5, 10, 15, 20, 25, 30}, 2); }

PowerAction ActionSpace::action(int index) const {
  if (index < 0 || index >= size_) throw std::out_of_range("action index " + std::to_string(index) + " out of range");
  const int base = static_cast<int>(levels_db_.size());
  PowerAction a{std::vector<double>(static_cast<std::size_t>(subchannels_))};
  for (int k = subchannels_ - 1; k >= 0; --k) {
    a.levels_db[static_cast<std::size_t>(k)] = levels_db_[static_cast<std::size_t>(index % base)];
    index /= base;
  }
  return a;
}

int ActionSpace::level_index(double level_db) const {
  for (std::size_t i = 0; i < levels_db_.size(); ++i) {
    if (levels_db_[i] == level_db) return static_cast<int>(i);
  }
  return -1;
}

bool ActionSpace::contains_level(double level_db) const { return level_index(level_db) >= 0; }

int ActionSpace::index_of(const PowerAction& action) const {
  if (action.subchannels() != subchannels_) throw ConfigError("power action has the wrong number of subchannels");
  const int base = static_cast<int>(levels_db_.size());
  int index = 0;
  for (double level : action.levels_db) {
    const int digit = level_index(level);
    if (digit < 0) throw ConfigError("power level " + format_double(level) + " dB is not in the configured set");
    index = index * base + digit;
  }
  return index;
}

int select_action_independent(const QTable& table, LearningState state, double epsilon, Rng& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < epsilon) {
    std::uniform_int_distribution<int> pick(0, table.actions() - 1);
    return pick(rng);
  }
  return argmax_lowest(table.values().row(state_index(state)));
}

int select_action_cooperative(std::span<const Eigen::VectorXd> q_rows) {
  if (q_rows.empty()) throw ProtocolError("cooperative selection needs at least one Q-row");
  Eigen::VectorXd global = q_rows.front();
  if (global.size() < 1) throw ProtocolError("cooperative selection: empty Q-row");
  for (std::size_t i = 1; i < q_rows.size(); ++i) {
    if (q_rows[i].size() != global.size()) {
      throw ProtocolError("cooperative selection: Q-row " + std::to_string(i) + " has " +
                          std::to_string(q_rows[i].size()) + " entries, expected " + std::to_string(global.size()));
    }
    global += q_rows[i];
  }
  return argmax_lowest(global);
}

std::vector<std::string> LearnerConfig::violations() const {
  std::vector<std::string> out;
  if (!(target_capacity_b0 > 0.0)) out.push_back("learner.target_capacity must be > 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) out.push_back("learner.alpha must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) out.push_back("learner.gamma must lie in [0, 1)");
  const auto& e = exploration;
  if (!(e.epsilon_initial >= 0.0 && e.epsilon_initial <= 1.0)) out.push_back("learner.epsilon_initial must lie in [0, 1]");
  if (!(e.epsilon_min >= 0.0 && e.epsilon_min <= 1.0)) out.push_back("learner.epsilon_min must lie in [0, 1]");
  if (!(e.epsilon_decay > 0.0 && e.epsilon_decay <= 1.0)) out.push_back("learner.epsilon_decay must lie in (0, 1]");
  return out;
}

void write_qtable_csv(std::ostream& out, const QTable& table) {
  out << "state";
  for (int a = 0; a < table.actions(); ++a) out << ",a" << a;
  out << '\n';
  for (int s = 0; s < kStateCount; ++s) {
    out << s;
    for (int a = 0; a < table.actions(); ++a) out << ',' << format_double(table.values()(s, a));
    out << '\n';
  }
}

QTable read_qtable_csv(std::istream& in, double alpha, double gamma) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("Q-table CSV: missing header");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header.front() != "state") throw ConfigError("Q-table CSV: header must start with 'state'");
  const int actions = static_cast<int>(header.size()) - 1;
  QTable table(actions, alpha, gamma);
  std::set<int> seen;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != actions + 1) throw ConfigError("Q-table CSV: ragged row");
    try {
      const int s = static_cast<int>(parse_double(fields[0]));
      if (s < 0 || s >= kStateCount || !seen.insert(s).second) throw ConfigError("Q-table CSV: bad state " + fields[0]);
      for (int a = 0; a < actions; ++a) table.values()(s, a) = parse_double(fields[static_cast<std::size_t>(a) + 1]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("Q-table CSV: ") + e.what());
    }
  }
  if (static_cast<int>(seen.size()) != kStateCount) throw ConfigError("Q-table CSV: expected one row per state");
  return table;
}

}  // namespace femtoq
