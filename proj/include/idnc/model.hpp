#pragma once

#include <optional>
#include <set>
#include <vector>

#include "idnc/rng.hpp"

namespace idnc {

using PacketSet = std::set<int>;

// The M packets under recovery and the importance r_{m,n} of packet m for
// device n, in distortion units. Importances may be zero but never negative.
struct PacketUniverse {
  int packet_count = 0;  // M
  int device_count = 0;  // N
  std::vector<double> importance;  // M x N, row-major by packet

  double importance_at(int packet, int device) const {
    return importance[static_cast<std::size_t>(packet) * device_count + device];
  }

  double total_importance(int device) const;

  // All devices share one importance value per packet.
  static PacketUniverse broadcast(int device_count,
                                  const std::vector<double>& per_packet);
  static PacketUniverse from_matrix(int packet_count, int device_count,
                                    std::vector<double> matrix);

  void validate() const;
};

struct DeviceState {
  int id = 0;
  PacketSet has;
  PacketSet lacks;
  double distortion = 0.0;  // kept consistent with compute_distortion
};

// D2D loss matrix eps_{i,j} (diagonal unused) plus the first-stage per-device
// loss probabilities.
struct ChannelModel {
  int device_count = 0;
  std::vector<double> d2d_loss;     // N x N, row-major by transmitter
  std::vector<double> stage1_loss;  // N

  double loss(int transmitter, int receiver) const {
    return d2d_loss[static_cast<std::size_t>(transmitter) * device_count +
                    receiver];
  }

  static ChannelModel lossless(int device_count);
  static ChannelModel uniform_random(int device_count, double stage1_lo,
                                     double stage1_hi, double d2d_lo,
                                     double d2d_hi, Rng& rng);

  void validate() const;
};

struct ScenarioState {
  PacketUniverse universe;
  std::vector<DeviceState> devices;
  ChannelModel channel;

  int device_count() const { return static_cast<int>(devices.size()); }
  int packet_count() const { return universe.packet_count; }
};

// Distortion of Eq. form: total importance minus importance of held packets.
double compute_distortion(const PacketUniverse& universe, const PacketSet& has,
                          int device);

// First-stage Bernoulli reception, then scenario repair: orphan packets are
// assigned to one uniformly chosen device, and packets held by every device
// are removed from the universe (importance rows dropped, ids renumbered).
ScenarioState apply_stage1(const PacketUniverse& universe,
                           const ChannelModel& channel, Rng& rng);

// Build a scenario from explicit Has sets. Throws std::invalid_argument if a
// packet is held by nobody or by everybody; no repair is applied.
ScenarioState make_scenario(const PacketUniverse& universe,
                            const ChannelModel& channel,
                            const std::vector<PacketSet>& has_sets);

// Instant-decodability check: the single missing packet of the XOR, if the
// receiver misses exactly one of the coded packets.
std::optional<int> xor_decode(const DeviceState& receiver,
                              const PacketSet& coded);

}  // namespace idnc
