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

#include "femtoq/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <yaml-cpp/yaml.h>

#include <json.hpp>

#include "femtoq/format.hpp"

namespace femtoq {

namespace {

using Errors = std::vector<std::string>;

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& path, Errors& errors) {
  if (!node || !node.IsMap()) return;
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) errors.push_back((path.empty() ? "" : path + ".") + key + ": unknown key");
  }
}

template <typename T>
void read(const YAML::Node& parent, const std::string& key, const std::string& path, T& out, Errors& errors) {
  const YAML::Node v = parent[key];
  if (!v) return;
  try {
    out = v.as<T>();
  } catch (const YAML::Exception&) {
    errors.push_back((path.empty() ? "" : path + ".") + key + ": wrong type");
  }
}

std::optional<std::array<double, 2>> read_position(const YAML::Node& parent, const std::string& path, Errors& errors) {
  const YAML::Node v = parent["position"];
  if (!v) return std::nullopt;
  try {
    const auto xy = v.as<std::vector<double>>();
    if (xy.size() == 2) return std::array<double, 2>{xy[0], xy[1]};
  } catch (const YAML::Exception&) {
  }
  errors.push_back(path + ".position: expected [x, y]");
  return std::nullopt;
}

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

/// Every gain some SINR in the network reads.
std::vector<std::pair<NodeId, NodeId>> required_links(int fbs_count) {
  std::vector<std::pair<NodeId, NodeId>> links{{NodeId::mbs(), NodeId::mu()}};
  for (int n = 1; n <= fbs_count; ++n) {
    const NodeId f = NodeId::fbs(n);
    links.push_back({f, NodeId::mu()});
    links.push_back({NodeId::mbs(), f});
    links.push_back({NodeId::mu(), f});
    links.push_back({f, f});  // serving femto link
    for (int j = 1; j <= fbs_count; ++j) {
      if (j != n) links.push_back({NodeId::fbs(j), f});
    }
  }
  return links;
}

std::string link_label(NodeId tx, NodeId rx) {
  return tx == rx ? tx.label() + " -> fu" + std::to_string(tx.index) : tx.label() + " -> " + rx.label();
}

void parse_channel(const YAML::Node& root, ScenarioConfig& cfg, Errors& errors) {
  const YAML::Node ch = root["channel"];
  if (!ch) {
    errors.push_back("channel: missing section");
    return;
  }
  check_keys(ch, {"subchannels", "noise_power", "gains", "path_loss"}, "channel", errors);
  int subchannels = 2;
  double noise = 1.0;
  read(ch, "subchannels", "channel", subchannels, errors);
  read(ch, "noise_power", "channel", noise, errors);
  if (subchannels < 1) {
    errors.push_back("channel.subchannels must be >= 1");
    return;
  }
  if (!(noise > 0.0) || !std::isfinite(noise)) {
    errors.push_back("channel.noise_power must be finite and > 0");
    return;
  }
  const int n = cfg.fbs_count();
  cfg.channel = GainMatrix(n, subchannels, noise);

  const bool explicit_gains = static_cast<bool>(ch["gains"]);
  const bool geometry = static_cast<bool>(ch["path_loss"]);
  if (explicit_gains == geometry) {
    errors.push_back("channel: give exactly one of 'gains' or 'path_loss'");
    return;
  }

  if (explicit_gains) {
    const YAML::Node gains = ch["gains"];
    if (!gains.IsSequence()) {
      errors.push_back("channel.gains: expected a list");
      return;
    }
    for (std::size_t i = 0; i < gains.size(); ++i) {
      const std::string path = "channel.gains[" + std::to_string(i) + "]";
      const YAML::Node g = gains[i];
      check_keys(g, {"tx", "rx", "values"}, path, errors);
      std::string tx_text, rx_text;
      std::vector<double> values;
      read(g, "tx", path, tx_text, errors);
      read(g, "rx", path, rx_text, errors);
      read(g, "values", path, values, errors);
      try {
        const NodeId tx = parse_node_id(tx_text);
        const bool serving = rx_text.starts_with("fu");
        const NodeId rx = serving ? parse_node_id("fbs" + rx_text.substr(2)) : parse_node_id(rx_text);
        if (serving && rx != tx) throw ConfigError("an FU is only reachable from its own FBS");
        if (tx.position() >= cfg.channel.node_count() || rx.position() >= cfg.channel.node_count()) {
          throw ConfigError("node outside the scenario");
        }
        if (static_cast<int>(values.size()) != subchannels) {
          throw ConfigError("expected " + std::to_string(subchannels) + " values");
        }
        for (int k = 0; k < subchannels; ++k) {
          if (serving) {
            cfg.channel.set_femto_serving_gain(tx.index, k, values[static_cast<std::size_t>(k)]);
          } else {
            cfg.channel.set_gain(tx, rx, k, values[static_cast<std::size_t>(k)]);
          }
        }
      } catch (const ConfigError& e) {
        errors.push_back(path + ": " + e.what());
      }
    }
  } else {
    const YAML::Node pl = ch["path_loss"];
    check_keys(pl, {"g0", "d0", "exponent"}, "channel.path_loss", errors);
    PathLossSpec spec;
    read(pl, "g0", "channel.path_loss", spec.g0, errors);
    read(pl, "d0", "channel.path_loss", spec.d0, errors);
    read(pl, "exponent", "channel.path_loss", spec.exponent, errors);
    if (!(spec.g0 > 0.0) || !(spec.d0 > 0.0) || !(spec.exponent >= 0.0)) {
      errors.push_back("channel.path_loss: need g0 > 0, d0 > 0, exponent >= 0");
      return;
    }
    cfg.path_loss = spec;
    auto position = [&](NodeId node) -> std::optional<std::array<double, 2>> {
      if (node.kind == NodeKind::Mbs) return cfg.mbs_position;
      if (node.kind == NodeKind::Mu) return cfg.mu_position;
      return cfg.fbs[static_cast<std::size_t>(node.index - 1)].position;
    };
    bool complete = true;
    for (int p = 0; p < cfg.channel.node_count(); ++p) {
      const NodeId node = NodeId::at_position(p);
      if (!position(node)) {
        errors.push_back("nodes: " + node.label() + " needs a position for a path-loss channel");
        complete = false;
      }
    }
    if (!complete) return;
    for (const auto& [tx, rx] : required_links(n)) {
      const double d = tx == rx ? cfg.fbs[static_cast<std::size_t>(tx.index - 1)].fu_distance
                                : distance(*position(tx), *position(rx));
      const double g = path_loss_gain(spec.g0, spec.d0, spec.exponent, d);
      for (int k = 0; k < subchannels; ++k) {
        if (tx == rx) {
          cfg.channel.set_femto_serving_gain(tx.index, k, g);
        } else {
          cfg.channel.set_gain(tx, rx, k, g);
        }
      }
    }
  }

  for (const auto& [tx, rx] : required_links(n)) {
    for (int k = 0; k < subchannels; ++k) {
      if (!cfg.channel.has_gain(tx, rx, k)) {
        errors.push_back("channel: missing gain " + link_label(tx, rx) + " on subchannel " + std::to_string(k));
      }
    }
  }
}

}  // namespace

std::vector<std::string> ScenarioConfig::violations() const {
  Errors out = schedule.violations();
  const auto learner_problems = learner.violations();
  out.insert(out.end(), learner_problems.begin(), learner_problems.end());
  if (fbs.empty()) out.push_back("nodes.fbs: at least one FBS is required");
  if (fbs_count() > schedule.max_fbs()) {
    out.push_back("nodes.fbs: the frame has room for " + std::to_string(schedule.max_fbs()) + " FBSs");
  }
  for (std::size_t i = 0; i < fbs.size(); ++i) {
    if (fbs[i].join_frame < 0) out.push_back("nodes.fbs[" + std::to_string(i) + "].join_frame must be >= 0");
    if (!(fbs[i].fu_distance > 0.0)) out.push_back("nodes.fbs[" + std::to_string(i) + "].fu_distance must be > 0");
  }
  if (channel.fbs_count() != fbs_count()) out.push_back("channel: does not cover every FBS");
  if (channel.subchannels() != schedule.acquisition_substates) {
    out.push_back("schedule: one acquisition sub-state per subchannel is required");
  }
  if (learner.action_space.subchannels() != channel.subchannels()) {
    out.push_back("learner: action space subchannels differ from channel.subchannels");
  }
  if (!learner.action_space.contains_level(equal_power_db)) {
    out.push_back("baselines.equal_power_db: " + format_double(equal_power_db) + " is not one of learner.power_levels_db");
  }
  if (!(oracle_slack >= 0.0)) out.push_back("baselines.oracle_slack must be >= 0");
  if (!(aloha_probability > 0.0 && aloha_probability <= 1.0)) out.push_back("mac.aloha_probability must lie in (0, 1]");
  if (frames < 0) out.push_back("frames must be >= 0");
  if (estimation.kind == EstimationMode::Kind::Probe) {
    if (estimation.probe_count < 2) out.push_back("estimation.probe_count must be >= 2");
    if (!(estimation.probe_noise_power >= 0.0)) out.push_back("estimation.probe_noise_power must be >= 0");
  }
  if (!std::isfinite(mbs_power_db) || !std::isfinite(mu_power_db)) out.push_back("nodes: transmit powers must be finite");
  return out;
}

MacConfig ScenarioConfig::mac_config() const {
  MacConfig m;
  m.schedule = schedule;
  m.algorithm = algorithm;
  m.learner = learner;
  m.estimation = estimation;
  m.mbs_power_db = mbs_power_db;
  m.mu_power_db = mu_power_db;
  m.equal_power_db = equal_power_db;
  m.aloha_probability = aloha_probability;
  m.seed = seed;
  for (const auto& f : fbs) m.join_frames.push_back(f.join_frame);
  return m;
}

TransmitProfile ScenarioConfig::fixed_profile() const {
  TransmitProfile p;
  p.set(NodeId::mbs(), uniform_action(mbs_power_db, channel.subchannels()));
  p.set(NodeId::mu(), uniform_action(mu_power_db, channel.subchannels()));
  return p;
}

ScenarioConfig parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("scenario is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("scenario: expected a mapping at the top level");

  Errors errors;
  ScenarioConfig cfg;
  check_keys(root, {"name", "seed", "frames", "algorithm", "nodes", "channel", "schedule", "learner", "estimation", "mac",
                    "baselines"},
             "", errors);
  read(root, "name", "", cfg.name, errors);
  read(root, "seed", "", cfg.seed, errors);
  read(root, "frames", "", cfg.frames, errors);
  if (root["algorithm"]) {
    try {
      cfg.algorithm = parse_algorithm(root["algorithm"].as<std::string>());
    } catch (const std::exception& e) {
      errors.push_back(std::string("algorithm: ") + e.what());
    }
  }

  const YAML::Node nodes = root["nodes"];
  if (!nodes) {
    errors.push_back("nodes: missing section");
  } else {
    check_keys(nodes, {"mbs", "mu", "fbs"}, "nodes", errors);
    if (const YAML::Node mbs = nodes["mbs"]) {
      check_keys(mbs, {"power_db", "position"}, "nodes.mbs", errors);
      read(mbs, "power_db", "nodes.mbs", cfg.mbs_power_db, errors);
      cfg.mbs_position = read_position(mbs, "nodes.mbs", errors);
    }
    if (const YAML::Node mu = nodes["mu"]) {
      check_keys(mu, {"power_db", "position"}, "nodes.mu", errors);
      read(mu, "power_db", "nodes.mu", cfg.mu_power_db, errors);
      cfg.mu_position = read_position(mu, "nodes.mu", errors);
    }
    const YAML::Node fbs = nodes["fbs"];
    if (!fbs || !fbs.IsSequence()) {
      errors.push_back("nodes.fbs: expected a list of FBSs");
    } else {
      for (std::size_t i = 0; i < fbs.size(); ++i) {
        const std::string path = "nodes.fbs[" + std::to_string(i) + "]";
        check_keys(fbs[i], {"join_frame", "position", "fu_distance"}, path, errors);
        FbsSpec spec;
        read(fbs[i], "join_frame", path, spec.join_frame, errors);
        read(fbs[i], "fu_distance", path, spec.fu_distance, errors);
        spec.position = read_position(fbs[i], path, errors);
        cfg.fbs.push_back(spec);
      }
    }
  }

  if (const YAML::Node s = root["schedule"]) {
    check_keys(s, {"sync_slots", "slots_per_substate", "qpa_slots", "slot_duration_s", "sensing_duration_s"}, "schedule",
               errors);
    read(s, "sync_slots", "schedule", cfg.schedule.sync_slots, errors);
    read(s, "slots_per_substate", "schedule", cfg.schedule.slots_per_substate, errors);
    read(s, "qpa_slots", "schedule", cfg.schedule.qpa_slots, errors);
    read(s, "slot_duration_s", "schedule", cfg.schedule.slot_duration_s, errors);
    read(s, "sensing_duration_s", "schedule", cfg.schedule.sensing_duration_s, errors);
  }

  std::vector<double> levels = cfg.learner.action_space.levels_db();
  if (const YAML::Node l = root["learner"]) {
    check_keys(l, {"target_capacity", "alpha", "gamma", "power_levels_db", "epsilon_initial", "epsilon_decay",
                   "epsilon_min"},
               "learner", errors);
    read(l, "target_capacity", "learner", cfg.learner.target_capacity_b0, errors);
    read(l, "alpha", "learner", cfg.learner.alpha, errors);
    read(l, "gamma", "learner", cfg.learner.gamma, errors);
    read(l, "power_levels_db", "learner", levels, errors);
    read(l, "epsilon_initial", "learner", cfg.learner.exploration.epsilon_initial, errors);
    read(l, "epsilon_decay", "learner", cfg.learner.exploration.epsilon_decay, errors);
    read(l, "epsilon_min", "learner", cfg.learner.exploration.epsilon_min, errors);
  }

  if (const YAML::Node e = root["estimation"]) {
    check_keys(e, {"mode", "probe_count", "probe_noise_power"}, "estimation", errors);
    std::string mode = "perfect";
    read(e, "mode", "estimation", mode, errors);
    if (mode == "probe") {
      cfg.estimation.kind = EstimationMode::Kind::Probe;
    } else if (mode != "perfect") {
      errors.push_back("estimation.mode: expected perfect or probe");
    }
    read(e, "probe_count", "estimation", cfg.estimation.probe_count, errors);
    read(e, "probe_noise_power", "estimation", cfg.estimation.probe_noise_power, errors);
  }
  if (const YAML::Node m = root["mac"]) {
    check_keys(m, {"aloha_probability"}, "mac", errors);
    read(m, "aloha_probability", "mac", cfg.aloha_probability, errors);
  }
  if (const YAML::Node b = root["baselines"]) {
    check_keys(b, {"equal_power_db", "oracle_slack"}, "baselines", errors);
    read(b, "equal_power_db", "baselines", cfg.equal_power_db, errors);
    read(b, "oracle_slack", "baselines", cfg.oracle_slack, errors);
  }

  parse_channel(root, cfg, errors);
  if (cfg.channel.subchannels() > 0) {
    cfg.schedule.acquisition_substates = cfg.channel.subchannels();
    try {
      cfg.learner.action_space = ActionSpace(levels, cfg.channel.subchannels());
    } catch (const ConfigError& e) {
      errors.push_back(std::string("learner.power_levels_db: ") + e.what());
    }
  }

  for (auto& v : cfg.violations()) {
    if (std::find(errors.begin(), errors.end(), v) == errors.end()) errors.push_back(std::move(v));
  }
  if (!errors.empty()) {
    std::string msg = "invalid scenario (" + std::to_string(errors.size()) + " problem" + (errors.size() > 1 ? "s" : "") + "):";
    for (const auto& e : errors) msg += " " + e + ";";
    throw ConfigError(msg);
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string canonical_scenario(const ScenarioConfig& cfg) {
  YAML::Emitter y;
  y << YAML::BeginMap;
  y << YAML::Key << "name" << YAML::Value << cfg.name;
  y << YAML::Key << "frames" << YAML::Value << cfg.frames;
  y << YAML::Key << "algorithm" << YAML::Value << to_string(cfg.algorithm);
  y << YAML::Key << "nodes" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "mbs_power_db" << YAML::Value << format_double(cfg.mbs_power_db);
  y << YAML::Key << "mu_power_db" << YAML::Value << format_double(cfg.mu_power_db);
  y << YAML::Key << "join_frames" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& f : cfg.fbs) y << f.join_frame;
  y << YAML::EndSeq << YAML::EndMap;

  y << YAML::Key << "channel" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "noise_power" << YAML::Value << format_double(cfg.channel.noise_power());
  y << YAML::Key << "gains" << YAML::Value << YAML::BeginSeq;
  for (const auto& [tx, rx] : required_links(cfg.fbs_count())) {
    y << YAML::Flow << YAML::BeginSeq << link_label(tx, rx);
    for (int k = 0; k < cfg.channel.subchannels(); ++k) {
      y << format_double(tx == rx ? cfg.channel.serving_gain(rx, k) : cfg.channel.gain(tx, rx, k));
    }
    y << YAML::EndSeq;
  }
  y << YAML::EndSeq << YAML::EndMap;

  const auto& s = cfg.schedule;
  y << YAML::Key << "schedule" << YAML::Value << YAML::Flow << YAML::BeginSeq << s.sync_slots << s.acquisition_substates
    << s.slots_per_substate << s.qpa_slots << format_double(s.slot_duration_s) << format_double(s.sensing_duration_s)
    << YAML::EndSeq;
  const auto& l = cfg.learner;
  y << YAML::Key << "learner" << YAML::Value << YAML::Flow << YAML::BeginSeq << format_double(l.target_capacity_b0)
    << format_double(l.alpha) << format_double(l.gamma) << format_double(l.exploration.epsilon_initial)
    << format_double(l.exploration.epsilon_decay) << format_double(l.exploration.epsilon_min) << YAML::EndSeq;
  y << YAML::Key << "power_levels_db" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double v : l.action_space.levels_db()) y << format_double(v);
  y << YAML::EndSeq;
  y << YAML::Key << "estimation" << YAML::Value << YAML::Flow << YAML::BeginSeq
    << (cfg.estimation.kind == EstimationMode::Kind::Probe ? "probe" : "perfect") << cfg.estimation.probe_count
    << format_double(cfg.estimation.probe_noise_power) << YAML::EndSeq;
  y << YAML::Key << "aloha_probability" << YAML::Value << format_double(cfg.aloha_probability);
  y << YAML::Key << "equal_power_db" << YAML::Value << format_double(cfg.equal_power_db);
  y << YAML::Key << "oracle_slack" << YAML::Value << format_double(cfg.oracle_slack);
  y << YAML::EndMap;
  return y.c_str();
}

std::string scenario_hash(const ScenarioConfig& config) { return fnv1a_hex(canonical_scenario(config)); }

void write_trace_line(std::ostream& out, const MacMessage& m) {
  nlohmann::ordered_json j;
  j["time"] = m.time_s;
  j["frame"] = m.frame;
  j["slot"] = m.slot;
  j["kind"] = to_string(m.kind);
  j["sender"] = m.sender.label();
  j["subchannel"] = m.subchannel ? nlohmann::ordered_json(*m.subchannel) : nlohmann::ordered_json(nullptr);
  j["payload"] = payload_summary(m);
  out << j.dump() << '\n';
}

std::vector<MetricsRecord> run_scenario(const ScenarioConfig& config, std::ostream* trace) {
  if (const auto v = config.violations(); !v.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& e : v) msg += " " + e + ";";
    throw ConfigError(msg);
  }
  NetworkState state = make_network(config.mac_config(), config.channel);
  std::vector<MetricsRecord> records;
  records.reserve(static_cast<std::size_t>(config.frames));
  for (int f = 0; f < config.frames; ++f) {
    FrameOutcome out = run_frame(state);
    if (trace) {
      for (const auto& m : out.messages) write_trace_line(*trace, m);
    }
    records.push_back(std::move(out.record));
  }
  return records;
}

WindowMeans final_window(const std::vector<MetricsRecord>& records) {
  WindowMeans w;
  if (records.empty()) return w;
  const std::size_t count = std::max<std::size_t>(1, records.size() / 5);
  for (std::size_t i = records.size() - count; i < records.size(); ++i) {
    w.c_m += records[i].c_m;
    w.c_0 += records[i].c_0;
  }
  w.c_m /= static_cast<double>(count);
  w.c_0 /= static_cast<double>(count);
  w.frames = static_cast<int>(count);
  return w;
}

std::optional<int> convergence_frame(const std::vector<MetricsRecord>& records, int fbs_index) {
  const auto p = static_cast<std::size_t>(fbs_index - 1);
  std::optional<int> last;
  std::optional<int> since;
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    const auto g = p < it->greedy.size() ? it->greedy[p] : std::nullopt;
    if (!g) break;
    if (!last) last = g;
    if (*g != *last) break;
    since = it->frame;
  }
  return since;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const std::vector<std::uint64_t>& seeds,
                                const std::vector<Algorithm>& algorithms, unsigned workers) {
  if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
  if (algorithms.empty()) throw ConfigError("sweep needs at least one algorithm");
  std::vector<SweepRow> rows(seeds.size() * algorithms.size());
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      SweepRow& row = rows[s * algorithms.size() + a];
      row.seed = seeds[s];
      row.algorithm = algorithms[a];
    }
  }

  auto run_cell = [&](SweepRow& row) {
    try {
      ScenarioConfig cfg = base;
      cfg.seed = row.seed;
      cfg.algorithm = row.algorithm;
      const auto records = run_scenario(cfg);
      row.frames = static_cast<int>(records.size());
      row.window = final_window(records);
      for (int n = 1; n <= cfg.fbs_count(); ++n) row.convergence.push_back(convergence_frame(records, n));
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(rows.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < rows.size();) run_cell(rows[i]);
    });
  }
  for (std::size_t i; (i = next++) < rows.size();) run_cell(rows[i]);
  for (auto& t : pool) t.join();
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SweepRow>& rows, int fbs_count) {
  out << "seed,algorithm,frames,final_c_m,final_c_0";
  for (int n = 1; n <= fbs_count; ++n) out << ",convergence_" << n;
  out << ",error\n";
  for (const auto& r : rows) {
    out << r.seed << ',' << to_string(r.algorithm) << ',' << r.frames << ',' << format_double(r.window.c_m) << ','
        << format_double(r.window.c_0);
    for (int n = 0; n < fbs_count; ++n) {
      out << ',';
      if (static_cast<std::size_t>(n) < r.convergence.size() && r.convergence[static_cast<std::size_t>(n)]) {
        out << *r.convergence[static_cast<std::size_t>(n)];
      }
    }
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << ',' << err << '\n';
  }
}

OracleResult run_oracle(const ScenarioConfig& config, std::vector<GridPoint>* grid) {
  return exhaustive_search(config.channel, config.fixed_profile(), config.learner.action_space,
                           config.learner.target_capacity_b0, config.oracle_slack, grid);
}

}  // namespace femtoq
