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

// femtoq: run power-allocation scenarios, sweeps and the oracle; plot metrics.
//
//   femtoq validate --config configs/two_fbs.yaml
//   femtoq run      --config configs/two_fbs.yaml --algorithm cdpa --seed 3 --out run.csv [--trace trace.jsonl]
//   femtoq sweep    --config configs/two_fbs.yaml --seeds 1-20 --algorithms pdpa,cdpa --out summary.csv
//   femtoq oracle   --config configs/two_fbs.yaml --out oracle.csv [--dump-grid grid.csv]
//   femtoq plot     --input run.csv --column c_m --out c_m.svg
//
// FEMTOQ_LOG=quiet|info|debug controls stderr chatter (default info).

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "femtoq/baselines.hpp"
#include "femtoq/chart.hpp"
#include "femtoq/errors.hpp"
#include "femtoq/format.hpp"
#include "femtoq/scenario.hpp"

namespace {

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
  const char* env = std::getenv("FEMTOQ_LOG");
  if (!env) return LogLevel::Info;
  const std::string v = env;
  if (v == "quiet" || v == "0") return LogLevel::Quiet;
  if (v == "debug" || v == "2") return LogLevel::Debug;
  return LogLevel::Info;
}

void log(LogLevel level, const std::string& msg) {
  if (level <= log_level() && log_level() != LogLevel::Quiet) std::cerr << "femtoq: " << msg << '\n';
}

/// Usage problems exit with 2; everything else that goes wrong at runtime exits with 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        seeds.push_back(std::stoull(part));
      } else {
        const auto lo = std::stoull(part.substr(0, dash)), hi = std::stoull(part.substr(dash + 1));
        if (hi < lo) throw UsageError("bad seed range " + part);
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad seed list '" + text + "'");
    }
  }
  if (seeds.empty()) throw UsageError("empty seed list");
  return seeds;
}

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> algorithm;
  std::optional<int> frames;
};

femtoq::ScenarioConfig load(const Overrides& o) {
  femtoq::ScenarioConfig cfg;
  try {
    cfg = femtoq::load_scenario(o.config);
    if (o.seed) cfg.seed = *o.seed;
    if (o.algorithm) cfg.algorithm = femtoq::parse_algorithm(*o.algorithm);
    if (o.frames) {
      if (*o.frames < 0) throw femtoq::ConfigError("--frames must be >= 0");
      cfg.frames = *o.frames;
    }
  } catch (const femtoq::ConfigError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void add_scenario_flags(CLI::App* cmd, Overrides& o, bool with_seed) {
  cmd->add_option("--config", o.config, "Scenario file (YAML)")->required()->check(CLI::ExistingFile);
  if (with_seed) cmd->add_option("--seed", o.seed, "Override the scenario seed");
  cmd->add_option("--algorithm", o.algorithm, "pdpa | cdpa | ep")->check(CLI::IsMember({"pdpa", "cdpa", "ep"}));
  cmd->add_option("--frames", o.frames, "Override the frame count");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"femtoq: distributed Q-learning power allocation for femtocell networks"};
  app.require_subcommand(1);

  Overrides run_o, sweep_o, oracle_o, validate_o;
  std::string run_out = "metrics.csv", trace_path;
  auto* run = app.add_subcommand("run", "Simulate a scenario and write the metrics CSV");
  add_scenario_flags(run, run_o, true);
  run->add_option("--out", run_out, "Metrics CSV path");
  run->add_option("--trace", trace_path, "Write the MAC message trace as JSON lines");

  std::string sweep_out = "summary.csv", seeds_text = "1-10", algorithms_text = "pdpa,cdpa";
  unsigned workers = 0;
  auto* sweep = app.add_subcommand("sweep", "Run every (seed, algorithm) pair and write a summary CSV");
  add_scenario_flags(sweep, sweep_o, false);
  sweep->add_option("--seeds", seeds_text, "Seeds, e.g. 1-20 or 1,4,9");
  sweep->add_option("--algorithms", algorithms_text, "Comma separated algorithms");
  sweep->add_option("--workers", workers, "Worker threads (0 = all cores)");
  sweep->add_option("--out", sweep_out, "Summary CSV path");

  std::string oracle_out = "oracle.csv", grid_path;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive search over joint FBS actions");
  add_scenario_flags(oracle, oracle_o, false);
  oracle->add_option("--out", oracle_out, "Oracle result CSV path");
  oracle->add_option("--dump-grid", grid_path, "Also write every evaluated joint action to this CSV");

  std::vector<std::string> plot_inputs;
  std::string plot_column = "c_m", plot_out = "chart.svg", plot_title;
  std::optional<double> plot_target;
  std::optional<std::string> plot_seed;
  auto* plot = app.add_subcommand("plot", "Render metrics CSV columns as an SVG line chart");
  plot->add_option("--input", plot_inputs, "Metrics CSV (repeatable)")->required()->check(CLI::ExistingFile);
  plot->add_option("--column", plot_column, "c_m, c_0 or c_n_<N>");
  plot->add_option("--target", plot_target, "Reference line (defaults to the run's target capacity)");
  plot->add_option("--title", plot_title, "Chart title");
  plot->add_option("--seed", plot_seed, "Seed to record when the run has no metadata");
  plot->add_option("--out", plot_out, "SVG path");

  auto* validate = app.add_subcommand("validate", "Check a scenario file without running it");
  add_scenario_flags(validate, validate_o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      const auto cfg = load(run_o);
      std::ofstream trace;
      if (!trace_path.empty()) trace = open_out(trace_path);
      log(LogLevel::Info, "running " + cfg.name + " (" + femtoq::to_string(cfg.algorithm) + ", seed " +
                              std::to_string(cfg.seed) + ", " + std::to_string(cfg.frames) + " frames)");
      const auto records = femtoq::run_scenario(cfg, trace_path.empty() ? nullptr : &trace);
      auto out = open_out(run_out);
      femtoq::write_metrics_csv(out, records, cfg.fbs_count());
      femtoq::write_run_meta(run_out, {femtoq::scenario_hash(cfg), std::to_string(cfg.seed),
                                       femtoq::to_string(cfg.algorithm), cfg.learner.target_capacity_b0});
      const auto w = femtoq::final_window(records);
      log(LogLevel::Info, "final window: c_m=" + femtoq::format_double(w.c_m) + " c_0=" + femtoq::format_double(w.c_0));
    } else if (*sweep) {
      const auto cfg = load(sweep_o);
      const auto seeds = parse_seeds(seeds_text);
      std::vector<femtoq::Algorithm> algorithms;
      std::stringstream ss(algorithms_text);
      for (std::string a; std::getline(ss, a, ',');) {
        try {
          algorithms.push_back(femtoq::parse_algorithm(a));
        } catch (const femtoq::ConfigError& e) {
          throw UsageError(e.what());
        }
      }
      const auto rows = femtoq::run_sweep(cfg, seeds, algorithms, workers);
      auto out = open_out(sweep_out);
      femtoq::write_summary_csv(out, rows, cfg.fbs_count());
      int failed = 0;
      for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
      log(LogLevel::Info, std::to_string(rows.size()) + " runs, " + std::to_string(failed) + " failed");
      if (failed) return 1;
    } else if (*oracle) {
      const auto cfg = load(oracle_o);
      std::vector<femtoq::GridPoint> grid;
      const auto result = femtoq::run_oracle(cfg, grid_path.empty() ? nullptr : &grid);
      auto out = open_out(oracle_out);
      femtoq::write_oracle_csv(out, result, cfg.learner.action_space);
      if (!grid_path.empty()) {
        auto g = open_out(grid_path);
        femtoq::write_grid_csv(g, grid);
      }
      std::cout << "evaluations=" << result.evaluations << " feasible=" << (result.feasible ? "true" : "false")
                << " best_c0=" << femtoq::format_double(result.best_c0)
                << " best_cm=" << femtoq::format_double(result.best_cm) << '\n';
    } else if (*plot) {
      femtoq::ChartSpec spec;
      spec.column = plot_column;
      spec.title = plot_title;
      std::vector<femtoq::ChartSeries> series;
      for (const auto& input : plot_inputs) {
        spec.inputs.emplace_back(input);
        const auto meta = femtoq::read_run_meta(input);
        if (meta) {
          spec.config_hash += (spec.config_hash.empty() ? "" : " ") + meta->config_hash;
          spec.seed += (spec.seed.empty() ? "" : " ") + meta->seed;
          if (!spec.reference) spec.reference = meta->target_capacity;
        }
        std::ifstream in(input);
        const std::string label = meta ? meta->algorithm + " seed " + meta->seed : input;
        try {
          series.push_back(femtoq::load_series(in, plot_column, label));
        } catch (const femtoq::ConfigError& e) {
          throw UsageError(input + ": " + e.what());
        }
      }
      if (plot_target) spec.reference = plot_target;
      if (spec.seed.empty() && plot_seed) spec.seed = *plot_seed;
      if (spec.config_hash.empty()) spec.config_hash = "unknown";
      auto out = open_out(plot_out);
      out << femtoq::render_svg(spec, series);
    } else if (*validate) {
      const auto cfg = load(validate_o);
      std::cout << cfg.name << ": ok (" << cfg.fbs_count() << " FBS, " << cfg.channel.subchannels()
                << " subchannels, hash " << femtoq::scenario_hash(cfg) << ")\n";
    }
  } catch (const UsageError& e) {
    std::cerr << "femtoq: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "femtoq: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
