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


#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <doctest.h>

#include "femtoq/baselines.hpp"
#include "femtoq/errors.hpp"

using namespace femtoq;

namespace {

GainMatrix random_channel(int n, std::mt19937_64& rng, bool zero_to_mu = false, bool zero_cross = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GainMatrix g(n, 2, 1.0);
  for (int k = 0; k < 2; ++k) {
    g.set_gain(NodeId::mbs(), NodeId::mu(), k, 0.5 + u(rng));
    for (int f = 1; f <= n; ++f) {
      g.set_femto_serving_gain(f, k, 0.2 + u(rng));
      g.set_gain(NodeId::fbs(f), NodeId::mu(), k, zero_to_mu ? 0.0 : 1e-3 * u(rng));
      g.set_gain(NodeId::mbs(), NodeId::fbs(f), k, 0.02 * u(rng));
      g.set_gain(NodeId::mu(), NodeId::fbs(f), k, 0.02 * u(rng));
      for (int o = 1; o <= n; ++o) {
        if (o != f) g.set_gain(NodeId::fbs(o), NodeId::fbs(f), k, zero_cross ? 0.0 : 0.01 * u(rng));
      }
    }
  }
  return g;
}

TransmitProfile fixed() {
  TransmitProfile p;
  p.set(NodeId::mbs(), uniform_action(20.0, 2));
  p.set(NodeId::mu(), uniform_action(20.0, 2));
  return p;
}

}  // namespace

TEST_CASE("equal power action") {
  const ActionSpace s = ActionSpace::defaults();
  const auto a = equal_power_action(15.0, s, 2);
  REQUIRE(a.size() == 2);
  CHECK(a[0] == uniform_action(15.0, 2));
  CHECK(a[1] == a[0]);
  CHECK(s.index_of(equal_power_action(0.0, s, 1)[0]) == 0);
  const auto three = equal_power_action(30.0, s, 3);
  CHECK((three[0] == three[1] && three[1] == three[2]));
  CHECK_THROWS_AS(equal_power_action(12.0, s, 2), ConfigError);
}

TEST_CASE("evaluation count is |A|^n") {
  std::mt19937_64 rng(3);
  const ActionSpace s = ActionSpace::defaults();
  CHECK(exhaustive_search(random_channel(2, rng), fixed(), s, 11.0).evaluations == 2401);
  CHECK(exhaustive_search(random_channel(1, rng), fixed(), s, 11.0).evaluations == 49);
  const ActionSpace small({0, 15, 30}, 2);
  CHECK(exhaustive_search(random_channel(3, rng), fixed(), small, 11.0).evaluations == 729);
  CHECK_THROWS_AS(exhaustive_search(GainMatrix(0, 2, 1.0), fixed(), s, 11.0), ConfigError);
}

TEST_CASE("no coupling into the MU means max power for everyone") {
  std::mt19937_64 rng(4);
  const auto r = exhaustive_search(random_channel(2, rng, true, true), fixed(), ActionSpace::defaults(), 1.0);
  CHECK(r.feasible);
  CHECK(r.best_joint_action == std::vector<int>{48, 48});
}

TEST_CASE("one FBS matches a direct scan") {
  std::mt19937_64 rng(5);
  const ActionSpace s = ActionSpace::defaults();
  for (int trial = 0; trial < 20; ++trial) {
    const GainMatrix g = random_channel(1, rng);
    const double target = 10.0 + 4.0 * (trial % 3);
    const auto r = exhaustive_search(g, fixed(), s, target);
    // Independent scan straight from the SINR formula.
    int best = -1, fallback = 0;
    double best_c0 = 0.0, fb_cm = -1.0, fb_c0 = 0.0;
    for (int a = 0; a < 49; ++a) {
      double cm = 0.0, c0 = 0.0;
      for (int k = 0; k < 2; ++k) {
        const double pf = std::pow(10.0, s.action(a).levels_db[static_cast<std::size_t>(k)] / 10.0);
        cm += std::log2(1.0 + 100.0 * g.layer(k)(0, 1) / (1.0 + pf * g.layer(k)(2, 1)));
        c0 += std::log2(1.0 + pf * g.layer(k)(2, 2) / (1.0 + 100.0 * g.layer(k)(0, 2) + 100.0 * g.layer(k)(1, 2)));
      }
      if (cm >= target && (best < 0 || c0 > best_c0)) {
        best = a;
        best_c0 = c0;
      }
      if (cm > fb_cm || (cm == fb_cm && c0 > fb_c0)) {
        fallback = a;
        fb_cm = cm;
        fb_c0 = c0;
      }
    }
    CHECK(r.feasible == (best >= 0));
    CHECK(r.best_joint_action.at(0) == (best >= 0 ? best : fallback));
    CHECK(r.best_c0 == doctest::Approx(best >= 0 ? best_c0 : fb_c0).epsilon(1e-12));
  }
}

TEST_CASE("infeasible target falls back to the best macro capacity") {
  std::mt19937_64 rng(6);
  const auto r = exhaustive_search(random_channel(2, rng), fixed(), ActionSpace::defaults(), 1e6);
  CHECK_FALSE(r.feasible);
  // The MU suffers least when both FBSs sit at the lowest level.
  CHECK(r.best_joint_action == std::vector<int>{0, 0});
}

TEST_CASE("slack widens feasibility") {
  std::mt19937_64 rng(7);
  const GainMatrix g = random_channel(1, rng);
  const ActionSpace s = ActionSpace::defaults();
  const auto tight = exhaustive_search(g, fixed(), s, 1e6);
  const auto loose = exhaustive_search(g, fixed(), s, 1e6, 1e6);
  CHECK_FALSE(tight.feasible);
  CHECK(loose.feasible);
}

TEST_CASE("property: dominance and permutation") {
  std::mt19937_64 rng(8);
  const ActionSpace s({0, 10, 20, 30}, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const GainMatrix g = random_channel(2, rng);
    std::vector<GridPoint> grid;
    const double target = 9.0 + (trial % 5);
    const auto r = exhaustive_search(g, fixed(), s, target, 0.0, &grid);
    REQUIRE(grid.size() == 256);
    for (const auto& p : grid) {
      if (r.feasible && p.cm >= target) REQUIRE(p.c0 <= r.best_c0);
      REQUIRE(p.feasible == (p.cm >= target));
    }

    // Swap the two FBS labels.
    GainMatrix sw(2, 2, 1.0);
    const auto map = [](int pos) { return pos == 2 ? 3 : pos == 3 ? 2 : pos; };
    for (int k = 0; k < 2; ++k) {
      for (int tx = 0; tx < 4; ++tx) {
        for (int rx = 0; rx < 4; ++rx) {
          const double v = g.layer(k)(tx, rx);
          if (std::isnan(v)) continue;
          const NodeId t = NodeId::at_position(map(tx)), x = NodeId::at_position(map(rx));
          if (t == x) {
            sw.set_femto_serving_gain(t.index, k, v);
          } else {
            sw.set_gain(t, x, k, v);
          }
        }
      }
    }
    const auto rs = exhaustive_search(sw, fixed(), s, target);
    REQUIRE(rs.best_c0 == doctest::Approx(r.best_c0).epsilon(1e-12));
    REQUIRE(rs.feasible == r.feasible);
    const std::vector<int> swapped{rs.best_joint_action[1], rs.best_joint_action[0]};
    REQUIRE(swapped == r.best_joint_action);
  }
}

TEST_CASE("oracle csv") {
  std::mt19937_64 rng(9);
  const ActionSpace s = ActionSpace::defaults();
  std::vector<GridPoint> grid;
  const auto r = exhaustive_search(random_channel(2, rng), fixed(), s, 11.0, 0.0, &grid);
  std::ostringstream o, gcsv;
  write_oracle_csv(o, r, s);
  CHECK(o.str().rfind("joint_action,levels_db,c_0,c_m,feasible,evaluations\n", 0) == 0);
  CHECK(o.str().find(",2401\n") != std::string::npos);
  write_grid_csv(gcsv, grid);
  const std::string text = gcsv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2402);
}
