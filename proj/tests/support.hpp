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


// Shared fixtures for the unit and acceptance tests.

#ifndef FEMTOQ_TESTS_SUPPORT_HPP_
#define FEMTOQ_TESTS_SUPPORT_HPP_

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "femtoq/channel.hpp"
#include "femtoq/mac.hpp"

namespace femtoq::testing {

/// Every link of an n-FBS, k-subchannel network filled with draws in a plausible range.
inline GainMatrix random_channel(int n, int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GainMatrix g(n, k, 0.5 + u(rng));
  for (int s = 0; s < k; ++s) {
    for (int tx = 0; tx < n + 2; ++tx) {
      for (int rx = 1; rx < n + 2; ++rx) {
        if (tx == rx) continue;
        const double scale = (tx == 0 && rx == 1) ? 1.0 : 0.02;
        g.set_gain(NodeId::at_position(tx), NodeId::at_position(rx), s, scale * (0.05 + u(rng)));
      }
    }
    for (int f = 1; f <= n; ++f) g.set_femto_serving_gain(f, s, 0.3 + 2.0 * u(rng));
  }
  return g;
}

/// Runs `frames` frames and reports every protocol invariant that broke, one line each.
inline std::vector<std::string> protocol_violations(NetworkState& net, int frames) {
  std::vector<std::string> bad;
  const FrameSchedule& sched = net.config.schedule;
  const auto where = [](const FrameOutcome& o) { return "frame " + std::to_string(o.record.frame) + ": "; };
  std::vector<std::optional<int>> chosen_before(net.fbs.size());
  std::map<NodeId, int> held;  // node -> acquisition slot, once announced
  bool have_prev = false;
  double prev_end = net.clock_s;

  for (int f = 0; f < frames; ++f) {
    const FrameOutcome o = run_frame(net);
    const std::string at = where(o);

    // Slot accounting.
    if (o.slot_events != sched.total_slots()) bad.push_back(at + "slot events " + std::to_string(o.slot_events));
    if (std::abs(o.end_s - o.start_s - sched.frame_duration_s()) > 1e-9) bad.push_back(at + "frame duration");
    if (std::abs(o.start_s - prev_end) > 1e-9) bad.push_back(at + "clock gap");
    prev_end = o.end_s;

    // TDMA exclusivity: one broadcaster per slot; join attempts only in free slots.
    std::map<int, std::set<NodeId>> senders;
    double last_t = o.start_s;
    for (const MacMessage& m : o.messages) {
      if (m.time_s < last_t || m.time_s >= o.end_s) bad.push_back(at + "message out of order or outside the frame");
      last_t = m.time_s;
      if (m.kind == MessageKind::JoinAttempt) {
        const SlotRef r = locate_slot(sched, m.slot);
        if (r.phase != Phase::Acquisition || o.beacon.acquisition_slots.at(static_cast<std::size_t>(r.slot))) {
          bad.push_back(at + "join attempt in an owned slot");
        }
        continue;
      }
      senders[m.slot].insert(m.sender);
    }
    for (const auto& [slot, who] : senders) {
      if (who.size() > 1) bad.push_back(at + "slot " + std::to_string(slot) + " has several broadcasters");
    }

    // Join persistence.
    for (std::size_t s = 0; s < o.beacon.acquisition_slots.size(); ++s) {
      const SlotOwner& owner = o.beacon.acquisition_slots[s];
      if (owner != o.beacon.qpa_slots[s]) bad.push_back(at + "QPA occupancy does not mirror acquisition");
      if (!owner) continue;
      const auto [it, fresh] = held.emplace(*owner, static_cast<int>(s));
      if (!fresh && it->second != static_cast<int>(s)) bad.push_back(at + owner->label() + " moved slot");
    }
    for (const auto& [node, slot] : held) {
      if (o.beacon.acquisition_slots.at(static_cast<std::size_t>(slot)) != node) bad.push_back(at + node.label() + " lost its slot");
    }

    // Causality: what was chosen at the previous QPA is what transmits now.
    for (std::size_t p = 0; p < net.fbs.size(); ++p) {
      if (have_prev && chosen_before[p] && o.record.action[p] != chosen_before[p]) {
        bad.push_back(at + "fbs" + std::to_string(p + 1) + " did not apply its previous choice");
      }
      if (o.record.c_n[p].has_value() != o.record.action[p].has_value()) bad.push_back(at + "c_n without an action");
    }
    chosen_before = o.chosen;
    have_prev = true;

    // CDPA synchrony.
    if (net.config.algorithm == Algorithm::CdpaQ) {
      std::set<int> picks, applied;
      for (const auto& c : o.chosen) {
        if (c) picks.insert(*c);
      }
      for (const auto& a : o.record.action) {
        if (a) applied.insert(*a);
      }
      if (picks.size() > 1 || applied.size() > 1) bad.push_back(at + "cooperative agents disagree");
    }

    // c_0 is the sum of the admitted c_n.
    double sum = 0.0;
    for (const auto& c : o.record.c_n) sum += c.value_or(0.0);
    if (std::abs(sum - o.record.c_0) > 1e-9 * std::max(1.0, sum)) bad.push_back(at + "c_0 is not the sum of c_n");
  }
  return bad;
}

}  // namespace femtoq::testing

#endif  // FEMTOQ_TESTS_SUPPORT_HPP_
