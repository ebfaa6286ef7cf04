#pragma once

// Shared test fixtures. The three-device, four-packet exchange scenario is
// used throughout: A holds {p2,p3,p4}, B holds {p1,p3,p4}, C holds {p1,p2},
// and the optimal schedule is p2^p3 from A followed by p1^p4 from B.

#include <vector>

#include "idnc/model.hpp"
#include "idnc/rng.hpp"

namespace idnc_test {

// Devices A,B,C -> 0,1,2; packets p1..p4 -> 0..3.
constexpr int A = 0, B = 1, C = 2;
constexpr int p1 = 0, p2 = 1, p3 = 2, p4 = 3;

inline idnc::ScenarioState three_device_scenario(
    const std::vector<double>& per_packet = {1.0, 1.0, 1.0, 1.0}) {
  auto universe = idnc::PacketUniverse::broadcast(3, per_packet);
  auto channel = idnc::ChannelModel::lossless(3);
  std::vector<idnc::PacketSet> has = {
      {p2, p3, p4},  // A
      {p1, p3, p4},  // B
      {p1, p2},      // C
  };
  return idnc::make_scenario(universe, channel, has);
}

// Random scenario with valid invariants: random importances, random Has sets
// repaired through the stage-1 path.
inline idnc::ScenarioState random_scenario(idnc::Rng& rng, int n_devices,
                                           int m_packets, double stage1_loss,
                                           double d2d_lo = 0.0,
                                           double d2d_hi = 0.0,
                                           bool integer_importance = false) {
  std::vector<double> matrix;
  matrix.reserve(static_cast<std::size_t>(m_packets) * n_devices);
  for (int i = 0; i < m_packets * n_devices; ++i) {
    matrix.push_back(integer_importance ? rng.uniform_int(0, 8)
                                        : rng.uniform(0.0, 10.0));
  }
  auto universe = idnc::PacketUniverse::from_matrix(m_packets, n_devices,
                                                    std::move(matrix));
  auto channel = idnc::ChannelModel::uniform_random(
      n_devices, stage1_loss, stage1_loss, d2d_lo, d2d_hi, rng);
  return idnc::apply_stage1(universe, channel, rng);
}

}  // namespace idnc_test
