#include "idnc/wants.hpp"

#include <algorithm>
#include <stdexcept>

#include "idnc/errors.hpp"

namespace idnc {

namespace {

// Canonical family order: by cardinality, then lexicographically.
void sort_family(std::vector<PacketSet>& sets) {
  std::sort(sets.begin(), sets.end(), [](const PacketSet& a, const PacketSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
}

bool is_subset(const PacketSet& a, const PacketSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Keeps only inclusion-minimal members; input must be sorted by size.
void restore_antichain(std::vector<PacketSet>& sets) {
  std::vector<PacketSet> kept;
  for (auto& s : sets) {
    bool dominated = false;
    for (const auto& k : kept) {
      if (k == s || is_subset(k, s)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(std::move(s));
  }
  sets = std::move(kept);
}

}  // namespace

WantsFamily enumerate_wants_family(const ScenarioState& state, int device,
                                   double d_cons) {
  if (device < 0 || device >= state.device_count()) {
    throw std::invalid_argument("device id out of range");
  }
  if (d_cons < 0.0) throw std::invalid_argument("d_cons must be >= 0");

  const DeviceState& dev = state.devices[device];
  WantsFamily family;
  family.device_id = device;
  family.lacks = dev.lacks;

  // Zero-importance packets can never be required, so they are dropped from
  // the search outright.
  struct Cand {
    int packet;
    double importance;
  };
  std::vector<Cand> cands;
  for (int m : dev.lacks) {
    double r = state.universe.importance_at(m, device);
    if (r > 0.0) cands.push_back({m, r});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.importance != b.importance) return a.importance > b.importance;
    return a.packet < b.packet;
  });

  std::vector<double> suffix(cands.size() + 1, 0.0);
  for (int i = static_cast<int>(cands.size()) - 1; i >= 0; --i) {
    suffix[i] = suffix[i + 1] + cands[i].importance;
  }

  if (exclusion_fits(suffix[0], d_cons)) {
    family.sets = {PacketSet{}};
    family.completion_time = 0;
    return family;
  }
  if (static_cast<int>(cands.size()) > kMaxLacksForEnumeration) {
    throw CapacityError("Lacks set too large to enumerate; shrink the block");
  }

  std::vector<int> chosen;
  std::vector<PacketSet> found;

  auto emit = [&](double excluded) {
    // Monotone criterion: locally minimal (no single chosen element can also
    // be left out) implies inclusion-minimal among all admissible subsets.
    for (int i : chosen) {
      if (exclusion_fits(excluded + cands[i].importance, d_cons)) return;
    }
    PacketSet set;
    for (int i : chosen) set.insert(cands[i].packet);
    found.push_back(std::move(set));
  };

  auto dfs = [&](auto&& self, int idx, double excluded) -> void {
    if (exclusion_fits(excluded + suffix[idx], d_cons)) {
      // Everything left fits in the tolerance, so leaving it all out is the
      // only admissible completion that cannot shrink further.
      emit(excluded + suffix[idx]);
      return;
    }
    // idx < size here; suffix[idx] == 0 would have taken the branch above.
    if (exclusion_fits(excluded + cands[idx].importance, d_cons)) {
      self(self, idx + 1, excluded + cands[idx].importance);
    }
    chosen.push_back(idx);
    self(self, idx + 1, excluded);
    chosen.pop_back();
  };
  dfs(dfs, 0, 0.0);

  require(!found.empty(), "admissible Wants family cannot be empty");
  sort_family(found);
  family.sets = std::move(found);
  family.completion_time = static_cast<int>(family.sets.front().size());
  return family;
}

int per_device_completion_time(const WantsFamily& family) {
  require(!family.sets.empty(), "Wants family has no member sets");
  std::size_t best = family.sets.front().size();
  for (const auto& s : family.sets) best = std::min(best, s.size());
  return static_cast<int>(best);
}

WantsFamily advance_on_decode(WantsFamily family, int decoded) {
  if (family.satisfied()) {
    throw std::invalid_argument("satisfied device has nothing to advance");
  }
  if (!family.lacks.count(decoded)) {
    throw std::invalid_argument("decoded packet is not in the Lacks set");
  }
  const int old_t = family.completion_time;
  bool hit_minimum = false;
  for (auto& s : family.sets) {
    if (s.count(decoded) && static_cast<int>(s.size()) == old_t) {
      hit_minimum = true;
    }
    s.erase(decoded);
  }
  family.lacks.erase(decoded);

  sort_family(family.sets);
  family.sets.erase(std::unique(family.sets.begin(), family.sets.end()),
                    family.sets.end());
  restore_antichain(family.sets);
  family.completion_time = per_device_completion_time(family);

  require(family.completion_time == (hit_minimum ? old_t - 1 : old_t),
          "completion-time transition inconsistent with the family update");
  return family;
}

std::pair<int, int> completion_time_bounds(const CompletionVector& tvec) {
  int lo = 0, hi = 0;
  for (int t : tvec.values) {
    lo = std::max(lo, t);
    hi += t;
  }
  return {lo, hi};
}

}  // namespace idnc
