#include "idnc/model.hpp"

#include <algorithm>
#include <stdexcept>

#include "idnc/errors.hpp"

namespace idnc {

double PacketUniverse::total_importance(int device) const {
  double sum = 0.0;
  for (int m = 0; m < packet_count; ++m) sum += importance_at(m, device);
  return sum;
}

PacketUniverse PacketUniverse::broadcast(int device_count,
                                         const std::vector<double>& per_packet) {
  PacketUniverse u;
  u.packet_count = static_cast<int>(per_packet.size());
  u.device_count = device_count;
  u.importance.reserve(per_packet.size() * device_count);
  for (double r : per_packet) {
    for (int n = 0; n < device_count; ++n) u.importance.push_back(r);
  }
  u.validate();
  return u;
}

PacketUniverse PacketUniverse::from_matrix(int packet_count, int device_count,
                                           std::vector<double> matrix) {
  PacketUniverse u;
  u.packet_count = packet_count;
  u.device_count = device_count;
  u.importance = std::move(matrix);
  u.validate();
  return u;
}

void PacketUniverse::validate() const {
  if (packet_count < 0 || device_count < 1) {
    throw std::invalid_argument("universe needs at least one device");
  }
  if (importance.size() !=
      static_cast<std::size_t>(packet_count) * device_count) {
    throw std::invalid_argument("importance matrix must be M x N");
  }
  for (double r : importance) {
    if (r < 0.0) throw std::invalid_argument("importances must be >= 0");
  }
}

ChannelModel ChannelModel::lossless(int device_count) {
  ChannelModel ch;
  ch.device_count = device_count;
  ch.d2d_loss.assign(static_cast<std::size_t>(device_count) * device_count, 0.0);
  ch.stage1_loss.assign(device_count, 0.0);
  return ch;
}

ChannelModel ChannelModel::uniform_random(int device_count, double stage1_lo,
                                          double stage1_hi, double d2d_lo,
                                          double d2d_hi, Rng& rng) {
  ChannelModel ch = lossless(device_count);
  for (int n = 0; n < device_count; ++n) {
    ch.stage1_loss[n] = rng.uniform(stage1_lo, stage1_hi);
  }
  for (int i = 0; i < device_count; ++i) {
    for (int j = 0; j < device_count; ++j) {
      if (i == j) continue;
      ch.d2d_loss[static_cast<std::size_t>(i) * device_count + j] =
          rng.uniform(d2d_lo, d2d_hi);
    }
  }
  ch.validate();
  return ch;
}

void ChannelModel::validate() const {
  if (device_count < 1) throw std::invalid_argument("channel needs devices");
  if (d2d_loss.size() != static_cast<std::size_t>(device_count) * device_count ||
      stage1_loss.size() != static_cast<std::size_t>(device_count)) {
    throw std::invalid_argument("channel matrix sizes inconsistent");
  }
  for (int i = 0; i < device_count; ++i) {
    for (int j = 0; j < device_count; ++j) {
      if (i == j) continue;
      double e = loss(i, j);
      if (e < 0.0 || e >= 1.0) {
        throw std::invalid_argument("D2D loss must lie in [0,1)");
      }
    }
  }
  for (double e : stage1_loss) {
    if (e < 0.0 || e > 1.0) {
      throw std::invalid_argument("stage-1 loss must lie in [0,1]");
    }
  }
}

double compute_distortion(const PacketUniverse& universe, const PacketSet& has,
                          int device) {
  if (device < 0 || device >= universe.device_count) {
    throw std::invalid_argument("device id out of range");
  }
  double sum = universe.total_importance(device);
  for (int m : has) {
    if (m < 0 || m >= universe.packet_count) {
      throw std::invalid_argument("packet id out of range in Has set");
    }
    sum -= universe.importance_at(m, device);
  }
  return std::max(0.0, sum);
}

namespace {

// Drops packets held by every device, renumbering the survivors, and fills in
// the device states.
ScenarioState finalize(const PacketUniverse& universe,
                       const ChannelModel& channel,
                       const std::vector<PacketSet>& has_sets) {
  const int n_devices = universe.device_count;
  std::vector<int> keep;
  for (int m = 0; m < universe.packet_count; ++m) {
    int holders = 0;
    for (int n = 0; n < n_devices; ++n) holders += has_sets[n].count(m);
    if (holders < n_devices) keep.push_back(m);
  }

  ScenarioState state;
  state.channel = channel;
  state.universe.packet_count = static_cast<int>(keep.size());
  state.universe.device_count = n_devices;
  for (int m : keep) {
    for (int n = 0; n < n_devices; ++n) {
      state.universe.importance.push_back(universe.importance_at(m, n));
    }
  }

  std::vector<int> remap(universe.packet_count, -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) remap[keep[i]] = i;

  for (int n = 0; n < n_devices; ++n) {
    DeviceState dev;
    dev.id = n;
    for (int m : keep) {
      if (has_sets[n].count(m)) {
        dev.has.insert(remap[m]);
      } else {
        dev.lacks.insert(remap[m]);
      }
    }
    dev.distortion = compute_distortion(state.universe, dev.has, n);
    state.devices.push_back(std::move(dev));
  }
  return state;
}

}  // namespace

ScenarioState apply_stage1(const PacketUniverse& universe,
                           const ChannelModel& channel, Rng& rng) {
  universe.validate();
  channel.validate();
  if (universe.device_count != channel.device_count) {
    throw std::invalid_argument("universe/channel device counts differ");
  }
  const int n_devices = universe.device_count;

  std::vector<PacketSet> has_sets(n_devices);
  for (int n = 0; n < n_devices; ++n) {
    for (int m = 0; m < universe.packet_count; ++m) {
      if (rng.uniform() >= channel.stage1_loss[n]) has_sets[n].insert(m);
    }
  }

  // Orphan packets are guaranteed a holder; the source would resend them
  // uncoded, which is modeled as one device receiving them here.
  for (int m = 0; m < universe.packet_count; ++m) {
    bool held = false;
    for (int n = 0; n < n_devices && !held; ++n) held = has_sets[n].count(m) > 0;
    if (!held) has_sets[rng.uniform_int(0, n_devices - 1)].insert(m);
  }

  return finalize(universe, channel, has_sets);
}

ScenarioState make_scenario(const PacketUniverse& universe,
                            const ChannelModel& channel,
                            const std::vector<PacketSet>& has_sets) {
  universe.validate();
  channel.validate();
  if (static_cast<int>(has_sets.size()) != universe.device_count ||
      universe.device_count != channel.device_count) {
    throw std::invalid_argument("has_sets size must match device count");
  }
  for (int m = 0; m < universe.packet_count; ++m) {
    int holders = 0;
    for (const auto& has : has_sets) holders += has.count(m);
    if (holders == 0) {
      throw std::invalid_argument("every packet needs at least one holder");
    }
    if (holders == universe.device_count) {
      throw std::invalid_argument("packet held by all devices");
    }
  }
  return finalize(universe, channel, has_sets);
}

std::optional<int> xor_decode(const DeviceState& receiver,
                              const PacketSet& coded) {
  if (coded.empty()) throw std::invalid_argument("coded set must be nonempty");
  std::optional<int> unknown;
  for (int p : coded) {
    if (receiver.lacks.count(p)) {
      if (unknown) return std::nullopt;  // two unknowns, not decodable
      unknown = p;
    }
  }
  return unknown;
}

}  // namespace idnc
