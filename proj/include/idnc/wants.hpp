#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "idnc/model.hpp"

namespace idnc {

inline constexpr int kMaxLacksForEnumeration = 20;

// A subset of the Lacks set is admissible when the importance it leaves
// uncollected fits inside the distortion tolerance. Testing the excluded
// side keeps the comparison exact at d_cons == 0 and avoids absorbing tiny
// importances into a large running total.
inline bool exclusion_fits(double excluded_importance, double d_cons) {
  return excluded_importance <= d_cons;
}

// Family of admissible Wants sets for one device: the inclusion-minimal
// subsets of the Lacks set whose importance covers the distortion gap.
// A satisfied device carries the family { {} } with completion time 0.
struct WantsFamily {
  int device_id = 0;
  PacketSet lacks;  // snapshot, advanced together with the sets
  std::vector<PacketSet> sets;
  int completion_time = 0;  // t_n = min |W|

  bool satisfied() const { return completion_time == 0; }
};

struct CompletionVector {
  std::vector<int> values;  // one T_n per device
};

// Exact enumeration of the minimal admissible Wants sets. Throws
// CapacityError when |Lacks| exceeds kMaxLacksForEnumeration.
WantsFamily enumerate_wants_family(const ScenarioState& state, int device,
                                   double d_cons);

int per_device_completion_time(const WantsFamily& family);

// State transition after the device decodes a packet: the packet leaves every
// member set (and the Lacks snapshot), the antichain is restored, and the
// completion time drops by one exactly when a minimum-cardinality member
// contained the packet.
WantsFamily advance_on_decode(WantsFamily family, int decoded);

// (max_n T_n, sum_n T_n)
std::pair<int, int> completion_time_bounds(const CompletionVector& tvec);

}  // namespace idnc
