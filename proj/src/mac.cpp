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

#include "femtoq/mac.hpp"

#include <map>
#include <sstream>

#include "femtoq/format.hpp"

namespace femtoq {

std::vector<std::string> FrameSchedule::violations() const {
  std::vector<std::string> out;
  if (sync_slots < 1) out.push_back("schedule.sync_slots must be >= 1");
  if (acquisition_substates < 1) out.push_back("schedule.acquisition_substates must be >= 1");
  if (slots_per_substate < kReservedSlots) out.push_back("schedule.slots_per_substate must be >= 2 (MBS and MU slots)");
  if (qpa_slots < kReservedSlots) out.push_back("schedule.qpa_slots must be >= 2 (MBS and MU slots)");
  if (!(slot_duration_s > 0.0)) out.push_back("schedule.slot_duration_s must be > 0");
  if (!(sensing_duration_s > 0.0 && sensing_duration_s <= slot_duration_s)) {
    out.push_back("schedule.sensing_duration_s must lie in (0, slot_duration_s]");
  }
  return out;
}

SlotRef locate_slot(const FrameSchedule& schedule, int frame_slot) {
  if (frame_slot < 0 || frame_slot >= schedule.total_slots()) throw std::out_of_range("slot outside the frame");
  if (frame_slot < schedule.sync_slots) return {Phase::Sync, 0, frame_slot};
  int rest = frame_slot - schedule.sync_slots;
  const int acquisition = schedule.acquisition_substates * schedule.slots_per_substate;
  if (rest < acquisition) return {Phase::Acquisition, rest / schedule.slots_per_substate, rest % schedule.slots_per_substate};
  rest -= acquisition;
  return {Phase::Qpa, 0, rest};
}

std::vector<int> BeaconPayload::free_acquisition_slots() const {
  std::vector<int> free;
  for (std::size_t s = FrameSchedule::kReservedSlots; s < acquisition_slots.size(); ++s) {
    // A slot is only usable by an FBS if its QPA mirror is free as well.
    if (!acquisition_slots[s] && s < qpa_slots.size() && !qpa_slots[s]) free.push_back(static_cast<int>(s));
  }
  return free;
}

std::optional<int> BeaconPayload::slot_of(NodeId node) const {
  for (std::size_t s = 0; s < acquisition_slots.size(); ++s) {
    if (acquisition_slots[s] == node) return static_cast<int>(s);
  }
  return std::nullopt;
}

BeaconPayload initial_beacon(const FrameSchedule& schedule) {
  BeaconPayload b;
  b.schedule = schedule;
  b.acquisition_slots.assign(static_cast<std::size_t>(schedule.slots_per_substate), std::nullopt);
  b.qpa_slots.assign(static_cast<std::size_t>(schedule.qpa_slots), std::nullopt);
  b.acquisition_slots[0] = b.qpa_slots[0] = NodeId::mbs();
  b.acquisition_slots[1] = b.qpa_slots[1] = NodeId::mu();
  return b;
}

std::string to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::Beacon: return "Beacon";
    case MessageKind::AcquisitionBroadcast: return "AcquisitionBroadcast";
    case MessageKind::QpaCapacityBroadcast: return "QpaCapacityBroadcast";
    case MessageKind::QpaQRowShare: return "QpaQRowShare";
    case MessageKind::JoinAttempt: return "JoinAttempt";
  }
  return "?";
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string owner_label(const SlotOwner& owner) { return owner ? owner->label() : "free"; }

}  // namespace

std::string payload_summary(const MacMessage& message) {
  return std::visit(
      Overloaded{
          [](const BeaconPayload& b) {
            std::string s = "acq=[";
            for (std::size_t i = 0; i < b.acquisition_slots.size(); ++i) s += (i ? " " : "") + owner_label(b.acquisition_slots[i]);
            s += "] qpa=[";
            for (std::size_t i = 0; i < b.qpa_slots.size(); ++i) s += (i ? " " : "") + owner_label(b.qpa_slots[i]);
            return s + "]";
          },
          [](const PowerAnnouncement& p) { return "power_db=" + format_double(p.level_db); },
          [](const CapacityAnnouncement& c) { return "capacity=" + format_double(c.capacity); },
          [](const QRowShare& q) {
            const Eigen::Index best = q.row.size() ? argmax_lowest(q.row) : -1;
            return "state=" + std::to_string(state_index(q.state)) + " len=" + std::to_string(q.row.size()) +
                   " argmax=" + std::to_string(best);
          },
          [](const JoinRequest& j) { return "slot=" + std::to_string(j.slot); },
      },
      message.payload);
}

void EventQueue::schedule(double time_s, Handler handler) {
  queue_.push(Event{time_s, next_seq_++, std::move(handler)});
}

int EventQueue::run() {
  int executed = 0;
  while (!queue_.empty()) {
    Event event = queue_.top();
    queue_.pop();
    now_ = event.time_s;
    event.handler();
    ++executed;
  }
  return executed;
}

double estimate_link_gain(NodeId broadcaster, NodeId listener, int subchannel, const GainMatrix& truth,
                          const EstimationMode& mode, double announced_linear_power, Rng& rng) {
  if (!(announced_linear_power > 0.0)) {
    throw EstimationError("cannot estimate the gain of " + broadcaster.label() + ": announced power is zero");
  }
  const double true_gain = broadcaster == listener ? truth.serving_gain(listener, subchannel)
                                                   : truth.gain(broadcaster, listener, subchannel);
  if (mode.kind == EstimationMode::Kind::Perfect) return true_gain;
  const auto samples =
      synthesize_probe_samples(announced_linear_power * true_gain, mode.probe_noise_power, mode.probe_count, rng);
  return probe_estimate(samples).signal_power / announced_linear_power;
}

std::vector<JoinOutcome> contend_for_slots(int joiners, std::span<const int> free_slots, double transmit_probability,
                                           Rng& rng) {
  if (free_slots.empty()) throw AdmissionError("no free acquisition slot for a joining FBS");
  if (!(transmit_probability > 0.0 && transmit_probability <= 1.0)) {
    throw ConfigError("aloha transmit probability must lie in (0, 1]");
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, free_slots.size() - 1);
  std::vector<int> choice(static_cast<std::size_t>(joiners), -1);
  std::map<int, int> load;
  for (int& c : choice) {
    if (coin(rng) < transmit_probability) {
      c = free_slots[pick(rng)];
      ++load[c];
    }
  }
  std::vector<JoinOutcome> outcomes;
  outcomes.reserve(choice.size());
  for (int c : choice) outcomes.push_back(c >= 0 && load[c] == 1 ? JoinOutcome::joined_at(c) : JoinOutcome::backoff(c));
  return outcomes;
}

JoinOutcome attempt_join(NodeId new_fbs, std::span<const int> free_slots, double transmit_probability, Rng& rng) {
  if (!new_fbs.is_fbs()) throw ProtocolError("only an FBS can join through slotted aloha");
  return contend_for_slots(1, free_slots, transmit_probability, rng).front();
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::PdpaQ: return "pdpa";
    case Algorithm::CdpaQ: return "cdpa";
    case Algorithm::EqualPower: return "ep";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "pdpa") return Algorithm::PdpaQ;
  if (text == "cdpa") return Algorithm::CdpaQ;
  if (text == "ep") return Algorithm::EqualPower;
  throw ConfigError("unknown algorithm '" + std::string(text) + "' (expected pdpa, cdpa or ep)");
}

namespace {

Rng stream(std::uint64_t seed, std::uint64_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), 0x66656d74u};
  return Rng(seq);
}

struct Selection {
  double epsilon = 0.0;
  std::map<int, int> greedy;  // agent position -> greedy action
};

/// Picks the next action of every participant (agent positions, ascending) in `observed`.
Selection choose_actions(NetworkState& state, const std::vector<int>& participants, LearningState observed) {
  Selection sel;
  if (participants.empty()) return sel;
  const MacConfig& cfg = state.config;
  const ActionSpace& space = cfg.learner.action_space;

  switch (cfg.algorithm) {
    case Algorithm::EqualPower: {
      const int fixed = space.index_of(uniform_action(cfg.equal_power_db, space.subchannels()));
      for (int p : participants) {
        state.fbs[p].pending_action = fixed;
        sel.greedy[p] = fixed;
      }
      break;
    }
    case Algorithm::PdpaQ: {
      for (int p : participants) {
        FbsAgent& agent = state.fbs[p];
        sel.epsilon = std::max(sel.epsilon, agent.epsilon);
        agent.pending_action = select_action_independent(agent.q, observed, agent.epsilon, agent.rng);
        sel.greedy[p] = argmax_lowest(agent.q.values().row(state_index(observed)));
      }
      break;
    }
    case Algorithm::CdpaQ: {
      std::vector<Eigen::VectorXd> rows;
      rows.reserve(participants.size());
      for (int p : participants) {
        sel.epsilon = std::max(sel.epsilon, state.fbs[p].epsilon);
        rows.push_back(state.fbs[p].q.row(observed));
      }
      const int greedy = select_action_cooperative(rows);
      // The lowest-index participant draws the shared exploration decision.
      Rng& coordinator = state.fbs[participants.front()].rng;
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      int shared = greedy;
      if (coin(coordinator) < sel.epsilon) {
        std::uniform_int_distribution<int> pick(0, space.size() - 1);
        shared = pick(coordinator);
      }
      for (int p : participants) {
        state.fbs[p].pending_action = shared;
        sel.greedy[p] = greedy;
      }
      break;
    }
  }

  for (int p : participants) {
    FbsAgent& agent = state.fbs[p];
    agent.decision_state = observed;
    if (cfg.algorithm != Algorithm::EqualPower) agent.epsilon = cfg.learner.exploration.next(agent.epsilon);
  }
  return sel;
}

double announced_power_db(const NetworkState& state, NodeId node, int subchannel) {
  switch (node.kind) {
    case NodeKind::Mbs: return state.config.mbs_power_db;
    case NodeKind::Mu: return state.config.mu_power_db;
    case NodeKind::Fbs: {
      const FbsAgent& agent = state.fbs.at(static_cast<std::size_t>(node.index - 1));
      if (!agent.applied_action) throw ProtocolError(node.label() + " broadcasts without a power action");
      return state.config.learner.action_space.action(*agent.applied_action).levels_db.at(static_cast<std::size_t>(subchannel));
    }
  }
  return 0.0;
}

}  // namespace

NetworkState make_network(MacConfig config, GainMatrix truth) {
  std::vector<std::string> problems = config.schedule.violations();
  const auto learner_problems = config.learner.violations();
  problems.insert(problems.end(), learner_problems.begin(), learner_problems.end());
  const int fbs_count = static_cast<int>(config.join_frames.size());
  if (truth.fbs_count() != fbs_count) problems.push_back("channel FBS count does not match the node list");
  if (truth.subchannels() != config.schedule.acquisition_substates) {
    problems.push_back("schedule.acquisition_substates must equal the number of subchannels");
  }
  if (config.learner.action_space.subchannels() != truth.subchannels()) {
    problems.push_back("action space subchannels must equal the number of subchannels");
  }
  if (fbs_count > config.schedule.max_fbs()) {
    problems.push_back("schedule has room for " + std::to_string(config.schedule.max_fbs()) + " FBSs, scenario has " +
                       std::to_string(fbs_count));
  }
  if (config.algorithm == Algorithm::EqualPower && !config.learner.action_space.contains_level(config.equal_power_db)) {
    problems.push_back("baselines.equal_power_db " + format_double(config.equal_power_db) + " is not a configured level");
  }
  if (!(config.aloha_probability > 0.0 && config.aloha_probability <= 1.0)) {
    problems.push_back("mac.aloha_probability must lie in (0, 1]");
  }
  if (!problems.empty()) {
    std::string msg = "invalid network configuration:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw ConfigError(msg);
  }

  NetworkState state;
  state.truth = std::move(truth);
  state.beacon = initial_beacon(config.schedule);
  state.probe_rng = stream(config.seed, 1);
  state.aloha_rng = stream(config.seed, 2);

  const int actions = config.learner.action_space.size();
  std::vector<int> founders;
  for (int n = 1; n <= fbs_count; ++n) {
    FbsAgent agent;
    agent.index = n;
    agent.join_frame = config.join_frames[static_cast<std::size_t>(n - 1)];
    if (agent.join_frame < 0) throw ConfigError("fbs" + std::to_string(n) + ".join_frame must be >= 0");
    agent.q = QTable(actions, config.learner.alpha, config.learner.gamma);
    agent.epsilon = config.learner.exploration.epsilon_initial;
    agent.rng = stream(config.seed, 100 + static_cast<std::uint64_t>(n));
    state.fbs.push_back(std::move(agent));
  }
  state.config = std::move(config);

  // FBSs present from the start hold a slot in the very first beacon.
  for (int p = 0; p < fbs_count; ++p) {
    if (state.fbs[p].join_frame != 0) continue;
    const auto free = state.beacon.free_acquisition_slots();
    const int slot = free.front();
    state.beacon.acquisition_slots[slot] = state.beacon.qpa_slots[slot] = NodeId::fbs(p + 1);
    founders.push_back(p);
  }
  choose_actions(state, founders, LearningState::Clear);
  return state;
}

FrameOutcome run_frame(NetworkState& state) {
  const MacConfig& cfg = state.config;
  const FrameSchedule& sched = cfg.schedule;
  const int fbs_count = static_cast<int>(state.fbs.size());
  const int frame = state.frame;
  const double start = state.clock_s;
  const double target = cfg.learner.target_capacity_b0;

  FrameOutcome out;
  out.start_s = start;
  out.beacon = state.beacon;
  const BeaconPayload& current = out.beacon;

  MetricsRecord& rec = out.record;
  rec.frame = frame;
  rec.c_n.assign(static_cast<std::size_t>(fbs_count), std::nullopt);
  rec.action = rec.greedy = std::vector<std::optional<int>>(static_cast<std::size_t>(fbs_count));
  rec.reward.assign(static_cast<std::size_t>(fbs_count), std::nullopt);
  out.chosen.assign(static_cast<std::size_t>(fbs_count), std::nullopt);

  // CSI is rebuilt from scratch every frame.
  GainMatrix csi(fbs_count, state.truth.subchannels(), state.truth.noise_power());
  TransmitProfile announced;
  CapacityReport report;
  LearningState observed = LearningState::Clear;
  std::vector<int> newly_joined;

  // Aloha contention for this frame is drawn up front; attempts go out in sub-state 0.
  std::vector<int> joiners;
  for (int p = 0; p < fbs_count; ++p) {
    const FbsAgent& a = state.fbs[p];
    if (!a.admitted && !current.slot_of(NodeId::fbs(a.index)) && a.join_frame <= frame) joiners.push_back(p);
  }
  std::vector<JoinOutcome> contention;
  if (!joiners.empty()) {
    const auto free = current.free_acquisition_slots();
    contention = contend_for_slots(static_cast<int>(joiners.size()), free, cfg.aloha_probability, state.aloha_rng);
  }

  auto emit = [&](int slot, MessageKind kind, NodeId sender, std::optional<int> subchannel, MacPayload payload) {
    out.messages.push_back(MacMessage{start + slot * sched.slot_duration_s, frame, slot, kind, sender, subchannel,
                                      std::move(payload)});
  };

  auto admitted_listeners = [&] {
    std::vector<NodeId> ls{NodeId::mu()};
    for (const auto& a : state.fbs) {
      if (a.admitted) ls.push_back(NodeId::fbs(a.index));
    }
    return ls;
  };

  EventQueue events;
  for (int g = 0; g < sched.total_slots(); ++g) {
    events.schedule(start + g * sched.slot_duration_s, [&, g] {
      ++out.slot_events;
      const SlotRef where = locate_slot(sched, g);
      switch (where.phase) {
        case Phase::Sync: {
          if (where.slot != 0) break;  // re-sync slots carry no traffic: clocks never drift
          emit(g, MessageKind::Beacon, NodeId::mbs(), std::nullopt, current);
          announced.set(NodeId::mbs(), uniform_action(cfg.mbs_power_db, csi.subchannels()));
          announced.set(NodeId::mu(), uniform_action(cfg.mu_power_db, csi.subchannels()));
          for (auto& a : state.fbs) {
            if (!current.slot_of(NodeId::fbs(a.index))) continue;
            if (!a.admitted) {
              a.admitted = true;
              a.admitted_frame = frame;
            }
            if (!a.pending_action) throw ProtocolError("fbs" + std::to_string(a.index) + " admitted without an action");
            a.applied_action = a.pending_action;
            announced.set(NodeId::fbs(a.index), cfg.learner.action_space.action(*a.applied_action));
          }
          break;
        }
        case Phase::Acquisition: {
          const int k = where.substate;
          const SlotOwner& owner = current.acquisition_slots[static_cast<std::size_t>(where.slot)];
          if (owner) {
            const double level = announced_power_db(state, *owner, k);
            emit(g, MessageKind::AcquisitionBroadcast, *owner, k, PowerAnnouncement{level});
            const double power = db_to_linear(level);
            for (NodeId listener : admitted_listeners()) {
              if (listener == *owner && !listener.is_fbs()) continue;
              const double h = estimate_link_gain(*owner, listener, k, state.truth, cfg.estimation, power, state.probe_rng);
              if (listener == *owner) {
                csi.set_femto_serving_gain(listener.index, k, h);
              } else {
                csi.set_gain(*owner, listener, k, h);
              }
            }
          }
          if (k != 0) break;
          // Join requests in this slot.
          std::vector<std::size_t> here;
          for (std::size_t j = 0; j < joiners.size(); ++j) {
            if (contention[j].slot == where.slot) here.push_back(j);
          }
          for (std::size_t j : here) {
            const NodeId node = NodeId::fbs(state.fbs[joiners[j]].index);
            if (owner) throw ProtocolError(node.label() + " transmitted a join request in an occupied slot");
            emit(g, MessageKind::JoinAttempt, node, std::nullopt, JoinRequest{where.slot});
            if (!contention[j].joined) continue;  // collision
            state.beacon.acquisition_slots[static_cast<std::size_t>(where.slot)] = node;
            state.beacon.qpa_slots[static_cast<std::size_t>(where.slot)] = node;
            newly_joined.push_back(joiners[j]);
          }
          break;
        }
        case Phase::Qpa: {
          if (where.slot == 0) {
            report = compute_capacities(announced, csi);
            observed = observe_state(report.c_m, target);
          }
          const SlotOwner& owner = current.qpa_slots[static_cast<std::size_t>(where.slot)];
          if (!owner) break;
          if (!owner->is_fbs()) {
            emit(g, MessageKind::QpaCapacityBroadcast, *owner, std::nullopt, CapacityAnnouncement{report.c_m});
            break;
          }
          FbsAgent& agent = state.fbs[static_cast<std::size_t>(owner->index - 1)];
          const double c_n = report.c_n.at(agent.index);
          const double reward = compute_reward(report.c_m, target, c_n);
          const auto p = static_cast<std::size_t>(agent.index - 1);
          rec.c_n[p] = c_n;
          rec.reward[p] = reward;
          rec.action[p] = agent.applied_action;
          if (cfg.algorithm != Algorithm::EqualPower) {
            q_update_in_place(agent.q, agent.decision_state, *agent.applied_action, reward, observed);
          }
          emit(g, MessageKind::QpaCapacityBroadcast, *owner, std::nullopt, CapacityAnnouncement{c_n});
          if (cfg.algorithm == Algorithm::CdpaQ) {
            emit(g, MessageKind::QpaQRowShare, *owner, std::nullopt, QRowShare{observed, agent.q.row(observed)});
          }
          break;
        }
      }
    });
  }

  // Learning step once the last QPA slot has been heard.
  events.schedule(start + sched.frame_duration_s(), [&] {
    std::vector<int> participants;
    for (int p = 0; p < fbs_count; ++p) {
      if (state.fbs[p].admitted) participants.push_back(p);
    }
    for (int p : newly_joined) participants.push_back(p);
    std::sort(participants.begin(), participants.end());
    const Selection sel = choose_actions(state, participants, observed);
    for (const auto& [p, g] : sel.greedy) rec.greedy[static_cast<std::size_t>(p)] = g;
    for (int p : participants) out.chosen[static_cast<std::size_t>(p)] = state.fbs[p].pending_action;
    rec.epsilon = sel.epsilon;
  });

  events.run();

  rec.c_m = report.c_m;
  rec.c_0 = report.c_0;
  rec.state = observed;
  out.end_s = start + sched.frame_duration_s();
  rec.time_s = out.end_s;
  state.clock_s = out.end_s;
  ++state.frame;
  return out;
}

}  // namespace femtoq
