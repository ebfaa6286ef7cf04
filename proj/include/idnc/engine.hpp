#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "idnc/policy.hpp"

namespace idnc {

enum class RoundOutcome { Received, Lost, NotTargeted };

struct DeviceOutcome {
  RoundOutcome outcome = RoundOutcome::NotTargeted;
  std::optional<int> decoded;

  bool operator==(const DeviceOutcome&) const = default;
};

struct TransmissionRecord {
  int round = 0;
  int transmitter = 0;
  PacketSet coded;
  std::vector<DeviceOutcome> outcomes;  // indexed by device

  bool operator==(const TransmissionRecord&) const = default;
};

struct EpisodeResult {
  int rounds_used = 0;        // realized T
  int successful_rounds = 0;  // rounds with at least one targeted decode
  std::vector<double> final_distortion;
  std::vector<TransmissionRecord> records;
  std::uint64_t seed = 0;
  bool terminated_normally = true;

  double distortion_pnorm(double p) const;
};

// One broadcast: every device other than the transmitter draws an independent
// erasure from the (seed, round, device) substream, successful receivers run
// xor_decode, and Has/Lacks/distortion (plus the Wants families, when
// maintained) advance for every device that decodes a new packet.
TransmissionRecord run_round(ScenarioState& state,
                             std::vector<WantsFamily>* families,
                             const CodeSelection& selection,
                             std::uint64_t episode_seed, int round);

// Transmit until every device meets its distortion constraint (or the round
// guard trips). max_rounds == 0 means ten times the initial completion-time
// upper bound.
EpisodeResult run_episode_p1(ScenarioState state, const PolicyConfig& policy,
                             std::uint64_t seed, int max_rounds = 0);

// Transmit for at most policy.t_cons rounds, stopping early once no device
// lacks anything.
EpisodeResult run_episode_p2(ScenarioState state, const PolicyConfig& policy,
                             std::uint64_t seed);

}  // namespace idnc
