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

#include "femtoq/channel.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace femtoq {

std::string NodeId::label() const {
  switch (kind) {
    case NodeKind::Mbs: return "mbs";
    case NodeKind::Mu: return "mu";
    case NodeKind::Fbs: return "fbs" + std::to_string(index);
  }
  return "?";
}

NodeId parse_node_id(std::string_view text) {
  if (text == "mbs") return NodeId::mbs();
  if (text == "mu") return NodeId::mu();
  if (text.starts_with("fbs") && text.size() > 3) {
    int n = 0;
    const auto digits = text.substr(3);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && n >= 1) return NodeId::fbs(n);
  }
  throw ConfigError("unknown node '" + std::string(text) + "' (expected mbs, mu or fbsN)");
}

const PowerAction& TransmitProfile::action(NodeId node) const {
  const auto it = actions_.find(node);
  if (it == actions_.end()) throw ScenarioError(node.label() + " is not transmitting");
  return it->second;
}

CapacityReport compute_capacities(const TransmitProfile& profile, const GainMatrix& channel) {
  CapacityReport report;
  auto capacity_at = [&](NodeId receiver) {
    double total = 0.0;
    for (int k = 0; k < channel.subchannels(); ++k) {
      const double sinr = compute_sinr(receiver, k, profile, channel);
      report.per_node_sinr[{receiver, k}] = sinr;
      total += std::log2(1.0 + sinr);
    }
    return total;
  };

  report.c_m = capacity_at(NodeId::mu());
  for (const auto& [node, action] : profile.entries()) {
    if (!node.is_fbs()) continue;
    report.c_n[node.index] = capacity_at(node);
  }
  report.c_0 = std::accumulate(report.c_n.begin(), report.c_n.end(), 0.0,
                               [](double acc, const auto& entry) { return acc + entry.second; });
  return report;
}

ProbeEstimate probe_estimate(std::span<const double> samples) {
  if (samples.size() < 2) throw EstimationError("probe estimate needs at least 2 outcomes");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double sq = 0.0;
  for (double s : samples) sq += (s - mean) * (s - mean);
  return {mean, sq / (n - 1.0)};
}

std::vector<double> synthesize_probe_samples(double true_power, double noise_power, int count, Rng& rng) {
  if (count < 2) throw EstimationError("probe synthesis needs count >= 2");
  if (!(true_power >= 0.0) || !(noise_power >= 0.0)) {
    throw EstimationError("probe synthesis needs non-negative powers");
  }
  std::vector<double> samples(static_cast<std::size_t>(count), true_power);
  if (noise_power == 0.0) return samples;
  std::normal_distribution<double> jitter(0.0, std::sqrt(noise_power));
  for (double& s : samples) s = std::max(0.0, true_power + jitter(rng));
  return samples;
}

}  // namespace femtoq
