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

// Power-allocation MAC frame, simulated on a discrete event queue.
//
// A frame is  [sync] [acquisition sub-state 0] ... [sub-state k-1] [QPA].
// Slot 0 and 1 of every acquisition sub-state belong to the MBS and the MU;
// the remaining slots are handed to FBSs through slotted aloha. The QPA slots
// mirror the acquisition occupancy. Learning runs once all QPA slots are done
// and the chosen powers take effect in the next frame.

#ifndef FEMTOQ_MAC_HPP_
#define FEMTOQ_MAC_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "femtoq/channel.hpp"
#include "femtoq/learning.hpp"
#include "femtoq/metrics.hpp"

namespace femtoq {

struct FrameSchedule {
  int sync_slots = 1;
  int acquisition_substates = 2;  // one per subchannel
  int slots_per_substate = 4;
  int qpa_slots = 4;
  double slot_duration_s = 0.5;
  double sensing_duration_s = 0.010;

  static constexpr int kReservedSlots = 2;  // MBS, MU

  int total_slots() const { return sync_slots + acquisition_substates * slots_per_substate + qpa_slots; }
  double frame_duration_s() const { return total_slots() * slot_duration_s; }
  /// FBSs that fit in both the acquisition and the QPA occupancy.
  int max_fbs() const { return std::min(slots_per_substate, qpa_slots) - kReservedSlots; }

  std::vector<std::string> violations() const;
};

enum class Phase { Sync, Acquisition, Qpa };

struct SlotRef {
  Phase phase = Phase::Sync;
  int substate = 0;  // acquisition only
  int slot = 0;      // position inside the phase (or sub-state)
};

SlotRef locate_slot(const FrameSchedule& schedule, int frame_slot);

using SlotOwner = std::optional<NodeId>;  // nullopt = Free

struct BeaconPayload {
  FrameSchedule schedule;
  std::vector<SlotOwner> acquisition_slots;  // one sub-state's layout, mirrored on every sub-state
  std::vector<SlotOwner> qpa_slots;

  std::vector<int> free_acquisition_slots() const;
  std::optional<int> slot_of(NodeId node) const;
};

BeaconPayload initial_beacon(const FrameSchedule& schedule);

enum class MessageKind { Beacon, AcquisitionBroadcast, QpaCapacityBroadcast, QpaQRowShare, JoinAttempt };

std::string to_string(MessageKind kind);

struct PowerAnnouncement {
  double level_db = 0.0;
};
struct CapacityAnnouncement {
  double capacity = 0.0;  // c_m from MBS/MU, c_n from an FBS
};
struct QRowShare {
  LearningState state = LearningState::Clear;
  Eigen::VectorXd row;
};
struct JoinRequest {
  int slot = 0;
};

using MacPayload = std::variant<BeaconPayload, PowerAnnouncement, CapacityAnnouncement, QRowShare, JoinRequest>;

struct MacMessage {
  double time_s = 0.0;
  int frame = 0;
  int slot = 0;  // slot index inside the frame
  MessageKind kind = MessageKind::Beacon;
  NodeId sender;
  std::optional<int> subchannel;
  MacPayload payload;
};

/// Short human summary of the payload, used by the JSON-lines trace.
std::string payload_summary(const MacMessage& message);

/// Discrete event queue ordered by (time, insertion sequence).
class EventQueue {
 public:
  using Handler = std::function<void()>;

  void schedule(double time_s, Handler handler);
  /// Runs every queued event in order; returns the number of events executed.
  int run();
  double now() const { return now_; }
  bool empty() const { return queue_.empty(); }

 private:
  struct Event {
    double time_s;
    std::uint64_t seq;
    Handler handler;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time_s != b.time_s ? a.time_s > b.time_s : a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t next_seq_ = 0;
  double now_ = 0.0;
};

struct EstimationMode {
  enum class Kind { Perfect, Probe };
  Kind kind = Kind::Perfect;
  int probe_count = 10;
  double probe_noise_power = 0.0;  // variance of one probe outcome, linear

  static EstimationMode perfect() { return {}; }
  static EstimationMode probe(int count, double noise_power) { return {Kind::Probe, count, noise_power}; }
};

/// Gain of broadcaster -> listener on `subchannel`. A listener equal to an FBS
/// broadcaster stands for that FBS's co-located FU and measures the serving link.
/// Probe mode divides the mean received probe power by the announced power.
double estimate_link_gain(NodeId broadcaster, NodeId listener, int subchannel, const GainMatrix& truth,
                          const EstimationMode& mode, double announced_linear_power, Rng& rng);

/// Joined(slot) or Backoff. `slot` is the slot the joiner transmitted in, so a
/// collided attempt still carries it; -1 means the joiner stayed silent.
struct JoinOutcome {
  bool joined = false;
  int slot = -1;

  static JoinOutcome backoff(int slot = -1) { return {false, slot}; }
  static JoinOutcome joined_at(int slot) { return {true, slot}; }
};

/// One slotted-aloha round: every joiner transmits with probability p in a
/// uniformly chosen free slot; a slot chosen by more than one joiner collides.
std::vector<JoinOutcome> contend_for_slots(int joiners, std::span<const int> free_slots, double transmit_probability,
                                           Rng& rng);

/// Single-joiner round of contend_for_slots.
JoinOutcome attempt_join(NodeId new_fbs, std::span<const int> free_slots, double transmit_probability, Rng& rng);

enum class Algorithm { PdpaQ, CdpaQ, EqualPower };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);

struct MacConfig {
  FrameSchedule schedule;
  Algorithm algorithm = Algorithm::PdpaQ;
  LearnerConfig learner;
  EstimationMode estimation;
  double mbs_power_db = 20.0;
  double mu_power_db = 20.0;
  double equal_power_db = 15.0;
  double aloha_probability = 0.5;
  std::vector<int> join_frames;  // per FBS (index n - 1); 0 = present from the start
  std::uint64_t seed = 1;
};

struct FbsAgent {
  int index = 0;
  int join_frame = 0;
  bool admitted = false;
  int admitted_frame = -1;
  QTable q;
  double epsilon = 1.0;
  std::optional<int> applied_action;  // transmitted in the current frame
  std::optional<int> pending_action;  // chosen at the last QPA, applied next frame
  LearningState decision_state = LearningState::Clear;  // state in which pending_action was chosen
  Rng rng;
};

/// Complete state of one simulated network between frames.
struct NetworkState {
  MacConfig config;
  GainMatrix truth;
  std::vector<FbsAgent> fbs;
  BeaconPayload beacon;       // announced at the next sync slot
  int frame = 0;
  double clock_s = 0.0;
  Rng probe_rng;
  Rng aloha_rng;
};

NetworkState make_network(MacConfig config, GainMatrix truth);

struct FrameOutcome {
  MetricsRecord record;
  std::vector<MacMessage> messages;
  int slot_events = 0;
  double start_s = 0.0;
  double end_s = 0.0;
  BeaconPayload beacon;                    // occupancy used during this frame
  std::vector<std::optional<int>> chosen;  // per FBS: action chosen at this QPA for the next frame
};

/// Advances the network by one frame.
FrameOutcome run_frame(NetworkState& state);

}  // namespace femtoq

#endif  // FEMTOQ_MAC_HPP_
