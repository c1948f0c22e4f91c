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


#include <array>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "femtoq/chart.hpp"
#include "femtoq/errors.hpp"
#include "femtoq/format.hpp"
#include "femtoq/scenario.hpp"

using namespace femtoq;

namespace {

const std::filesystem::path kConfigs = FEMTOQ_CONFIG_DIR;

constexpr const char* kMinimal = R"(
name: tiny
frames: 20
nodes:
  fbs:
    - {join_frame: 0}
channel:
  subchannels: 2
  noise_power: 1.0
  gains:
    - {tx: mbs, rx: mu, values: [1.0, 1.0]}
    - {tx: fbs1, rx: mu, values: [0.001, 0.001]}
    - {tx: mbs, rx: fbs1, values: [0.01, 0.01]}
    - {tx: mu, rx: fbs1, values: [0.01, 0.01]}
    - {tx: fbs1, rx: fu1, values: [1.0, 2.0]}
)";

std::string csv_of(const std::vector<MetricsRecord>& r, int n) {
  std::ostringstream out;
  write_metrics_csv(out, r, n);
  return out.str();
}

}  // namespace

TEST_CASE("format helpers") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(15.0) == "15");
  CHECK(parse_double(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_THROWS(parse_double("1.5x"));
  CHECK_THROWS(parse_double(""));
  CHECK(split_csv_line("a,,b") == std::vector<std::string>{"a", "", "b"});
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("parse a minimal scenario") {
  const ScenarioConfig c = parse_scenario(kMinimal);
  CHECK(c.name == "tiny");
  CHECK(c.fbs_count() == 1);
  CHECK(c.frames == 20);
  CHECK(c.learner.target_capacity_b0 == 11.0);
  CHECK(c.learner.action_space.size() == 49);
  CHECK(c.channel.serving_gain(NodeId::fbs(1), 1) == 2.0);
  CHECK(c.violations().empty());
}

TEST_CASE("scenario errors are collected") {
  std::string text = kMinimal;
  text += "learner: {alpha: 2.0, gamma: 1.5}\nbogus: 1\nmac: {aloha_probability: 0}\n";
  try {
    parse_scenario(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bogus: unknown key") != std::string::npos);
    CHECK(msg.find("alpha") != std::string::npos);
    CHECK(msg.find("gamma") != std::string::npos);
    CHECK(msg.find("aloha_probability") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_scenario("name: [unclosed"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("- 1\n- 2\n"), ConfigError);

  std::string missing = kMinimal;
  missing.erase(missing.find("    - {tx: mu, rx: fbs1"), std::string("    - {tx: mu, rx: fbs1, values: [0.01, 0.01]}\n").size());
  CHECK_THROWS_WITH_AS(parse_scenario(missing), doctest::Contains("mu"), ConfigError);

  std::string wrong_fu = kMinimal;
  wrong_fu.replace(wrong_fu.find("tx: fbs1, rx: fu1"), 17, "tx: mbs, rx: fu1");
  CHECK_THROWS_AS(parse_scenario(wrong_fu), ConfigError);

  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), ConfigError);
}

TEST_CASE("path-loss scenario") {
  const ScenarioConfig c = load_scenario(kConfigs / "path_loss.yaml");
  CHECK(c.path_loss.has_value());
  CHECK(c.channel.has_gain(NodeId::fbs(2), NodeId::fbs(1), 1));
  const PathLossSpec& pl = *c.path_loss;
  const auto at = [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
  };
  CHECK(c.channel.gain(NodeId::mbs(), NodeId::mu(), 0) ==
        doctest::Approx(path_loss_gain(pl.g0, pl.d0, pl.exponent, at(*c.mbs_position, *c.mu_position))));
  CHECK(c.channel.serving_gain(NodeId::fbs(1), 0) ==
        doctest::Approx(path_loss_gain(pl.g0, pl.d0, pl.exponent, c.fbs[0].fu_distance)));
  CHECK(run_scenario(c).size() == static_cast<std::size_t>(c.frames));
}

TEST_CASE("shipped scenarios validate") {
  for (const char* name : {"one_fbs.yaml", "two_fbs.yaml", "incremental.yaml", "path_loss.yaml"}) {
    CAPTURE(name);
    const ScenarioConfig c = load_scenario(kConfigs / name);
    CHECK(c.violations().empty());
  }
}

TEST_CASE("scenario hash ignores the seed only") {
  ScenarioConfig a = parse_scenario(kMinimal);
  ScenarioConfig b = a;
  b.seed = 99;
  CHECK(scenario_hash(a) == scenario_hash(b));
  CHECK(scenario_hash(a).size() == 16);
  b.learner.alpha = 0.4;
  CHECK(scenario_hash(a) != scenario_hash(b));
}

TEST_CASE("run_scenario basics") {
  ScenarioConfig c = parse_scenario(kMinimal);
  c.frames = 0;
  CHECK(run_scenario(c).empty());

  c.frames = 100;
  c.algorithm = Algorithm::EqualPower;
  const auto ep = run_scenario(c);
  REQUIRE(ep.size() == 100);
  for (const auto& r : ep) {
    REQUIRE(r.c_m == ep.front().c_m);
    REQUIRE(r.c_0 == ep.front().c_0);
  }

  c.algorithm = Algorithm::PdpaQ;
  const auto rec = run_scenario(c);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    REQUIRE(rec[i].frame == static_cast<int>(i));
    REQUIRE(rec[i].time_s == doctest::Approx(6.5 * static_cast<double>(i + 1)));
  }
  CHECK(csv_of(rec, 1) == csv_of(run_scenario(c), 1));

  c.fbs[0].join_frame = 0;
  c.frames = -1;
  CHECK_THROWS_AS(run_scenario(c), ConfigError);
}

TEST_CASE("trace lines") {
  ScenarioConfig c = parse_scenario(kMinimal);
  c.frames = 2;
  c.algorithm = Algorithm::CdpaQ;
  std::ostringstream trace;
  run_scenario(c, &trace);
  std::istringstream lines(trace.str());
  int count = 0;
  bool saw_row = false;
  for (std::string line; std::getline(lines, line); ++count) {
    const auto j = nlohmann::json::parse(line);
    REQUIRE(j.contains("time"));
    REQUIRE(j.contains("frame"));
    REQUIRE(j.contains("slot"));
    REQUIRE(j.contains("kind"));
    REQUIRE(j.contains("sender"));
    REQUIRE(j.contains("subchannel"));
    REQUIRE(j.contains("payload"));
    saw_row = saw_row || j["kind"] == "QpaQRowShare";
  }
  // Per frame: beacon, 3 owners x 2 sub-states, 3 QPA capacities, 1 row share.
  CHECK(count == 2 * 11);
  CHECK(saw_row);
}

TEST_CASE("final window and convergence") {
  std::vector<MetricsRecord> r(10);
  for (int i = 0; i < 10; ++i) {
    r[i].frame = i;
    r[i].c_m = i;
    r[i].c_0 = 2 * i;
    r[i].greedy = {i < 6 ? std::optional<int>(i) : std::optional<int>(7)};
  }
  const auto w = final_window(r);
  CHECK(w.frames == 2);
  CHECK(w.c_m == 8.5);
  CHECK(w.c_0 == 17.0);
  CHECK(convergence_frame(r, 1) == 6);
  r.resize(3);
  CHECK(final_window(r).frames == 1);
  CHECK_FALSE(convergence_frame({}, 1).has_value());
}

TEST_CASE("metrics csv") {
  ScenarioConfig c = load_scenario(kConfigs / "incremental.yaml");
  c.frames = 130;
  const auto rec = run_scenario(c);
  const std::string text = csv_of(rec, 2);
  CHECK(text.rfind("frame,time_s,c_m,c_0,c_n_1,c_n_2,action_1,action_2,state,epsilon,reward_1,reward_2\n", 0) == 0);
  std::istringstream in(text);
  const auto back = read_metrics_csv(in);
  REQUIRE(back.size() == rec.size());
  CHECK(csv_of(back, 2) == text);
  CHECK_FALSE(back[50].c_n[1].has_value());
  CHECK(back.back().c_n[1].has_value());
  std::istringstream bad("frame,time_s\n1,2\n");
  CHECK_THROWS(read_metrics_csv(bad));
}

TEST_CASE("sweep") {
  ScenarioConfig c = parse_scenario(kMinimal);
  c.frames = 60;
  const auto one = run_sweep(c, {4}, {Algorithm::PdpaQ}, 1);
  REQUIRE(one.size() == 1);
  c.seed = 4;
  const auto direct = run_scenario(c);
  const auto w = final_window(direct);
  CHECK(one[0].window.c_m == w.c_m);
  CHECK(one[0].window.c_0 == w.c_0);
  CHECK(one[0].convergence[0] == convergence_frame(direct, 1));

  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  const std::vector<Algorithm> algs{Algorithm::PdpaQ, Algorithm::CdpaQ, Algorithm::EqualPower};
  std::ostringstream serial, parallel;
  write_summary_csv(serial, run_sweep(c, seeds, algs, 1), 1);
  write_summary_csv(parallel, run_sweep(c, seeds, algs, 4), 1);
  CHECK(serial.str() == parallel.str());
  CHECK(serial.str().rfind("seed,algorithm,frames,final_c_m,final_c_0,convergence_1,error\n", 0) == 0);

  // Failing cells are reported, not thrown.
  c.equal_power_db = 12.0;
  const auto rows = run_sweep(c, {1}, {Algorithm::PdpaQ, Algorithm::EqualPower}, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].error.find("equal_power_db") != std::string::npos);
  CHECK(rows[1].error.find("equal_power_db") != std::string::npos);
}

TEST_CASE("charts") {
  ChartSeries flat{"ep", {0, 1, 2, 3}, {5, 5, 5, 5}};
  ChartSpec spec;
  spec.column = "c_m";
  spec.reference = 11.0;
  spec.config_hash = "abc<def";
  spec.seed = "7";
  const std::string svg = render_svg(spec, {flat});
  CHECK(svg.find("config-hash=\"abc&lt;def\"") != std::string::npos);
  CHECK(svg.find("seed=\"7\"") != std::string::npos);
  CHECK(svg.find("class=\"reference\"") != std::string::npos);
  // A flat series renders with a single y coordinate.
  const auto p = svg.find("points=\"");
  REQUIRE(p != std::string::npos);
  const std::string pts = svg.substr(p + 8, svg.find('"', p + 8) - p - 8);
  std::istringstream ps(pts);
  std::set<std::string> ys;
  for (std::string xy; ps >> xy;) ys.insert(xy.substr(xy.find(',') + 1));
  CHECK(ys.size() == 1);

  std::istringstream csv("frame,c_m,c_n_2\n0,1,\n1,2,3\n");
  const auto s = load_series(csv, "c_n_2", "x");
  CHECK(s.x == std::vector<double>{1});
  std::istringstream csv2("frame,c_m\n0,1\n");
  CHECK_THROWS_AS(load_series(csv2, "c_0", "x"), ConfigError);

  const auto dir = std::filesystem::temp_directory_path() / "femtoq_chart_test";
  std::filesystem::create_directories(dir);
  write_run_meta(dir / "m.csv", {"h", "3", "pdpa", 11.0});
  const auto meta = read_run_meta(dir / "m.csv");
  REQUIRE(meta.has_value());
  CHECK(meta->seed == "3");
  CHECK(meta->target_capacity == 11.0);
  CHECK_FALSE(read_run_meta(dir / "none.csv").has_value());
}
