#include "idnc/brute.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "idnc/errors.hpp"

namespace idnc {

WantsFamily brute_force_wants_family(const ScenarioState& state, int device,
                                     double d_cons) {
  const DeviceState& dev = state.devices[device];
  const std::vector<int> lacks(dev.lacks.begin(), dev.lacks.end());
  const int k = static_cast<int>(lacks.size());
  if (k > 20) throw CapacityError("Lacks set too large for the brute scan");

  WantsFamily family;
  family.device_id = device;
  family.lacks = dev.lacks;

  std::vector<std::uint32_t> admissible;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    double excluded = 0.0;
    for (int i = 0; i < k; ++i) {
      if (!(mask & (1u << i))) {
        excluded += state.universe.importance_at(lacks[i], device);
      }
    }
    if (exclusion_fits(excluded, d_cons)) admissible.push_back(mask);
  }
  for (std::uint32_t mask : admissible) {
    bool minimal = true;
    for (std::uint32_t other : admissible) {
      if (other != mask && (other & mask) == other) {
        minimal = false;
        break;
      }
    }
    if (minimal) {
      PacketSet set;
      for (int i = 0; i < k; ++i) {
        if (mask & (1u << i)) set.insert(lacks[i]);
      }
      family.sets.push_back(std::move(set));
    }
  }
  std::sort(family.sets.begin(), family.sets.end(),
            [](const PacketSet& a, const PacketSet& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                                  b.end());
            });
  family.completion_time = per_device_completion_time(family);
  return family;
}

std::vector<std::vector<int>> enumerate_cliques(const LocalGraph& graph) {
  const int k = graph.size();
  if (k > 20) throw CapacityError("graph too large for clique enumeration");
  // clique[s] holds iff s minus its lowest vertex is a clique inside that
  // vertex's neighbourhood.
  std::vector<char> is_clique(1u << k, 0);
  std::vector<std::uint32_t> adj(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j && graph.adjacent(i, j)) adj[i] |= 1u << j;
    }
  }
  std::vector<std::vector<int>> cliques;
  is_clique[0] = 1;
  for (std::uint32_t s = 1; s < (1u << k); ++s) {
    std::uint32_t low = s & (~s + 1);
    int v = __builtin_ctz(s);
    std::uint32_t rest = s ^ low;
    if (is_clique[rest] && (rest & ~adj[v]) == 0) {
      is_clique[s] = 1;
      std::vector<int> members;
      for (int i = 0; i < k; ++i) {
        if (s & (1u << i)) members.push_back(i);
      }
      cliques.push_back(std::move(members));
    }
  }
  return cliques;
}

std::optional<CodeSelection> brute_force_max_weight_clique(
    const LocalGraph& graph) {
  if (graph.vertices.empty()) return std::nullopt;
  std::vector<int> best;
  double best_weight = -1.0;
  for (const auto& clique : enumerate_cliques(graph)) {
    double w = 0.0;
    for (int i : clique) w += graph.vertices[i].weight;
    if (w > best_weight ||
        (w == best_weight &&
         std::lexicographical_compare(clique.begin(), clique.end(),
                                      best.begin(), best.end()))) {
      best_weight = w;
      best = clique;
    }
  }
  return selection_from_clique(graph, best);
}

double expected_distortion_pnorm(const ScenarioState& state,
                                 const CodeSelection& selection, double p) {
  double sum = 0.0;
  for (int n = 0; n < state.device_count(); ++n) {
    double d = state.devices[n].distortion;
    auto it = selection.targets.find(n);
    if (it == selection.targets.end() || n == selection.transmitter) {
      sum += std::pow(d, p);
    } else {
      double eps = state.channel.loss(selection.transmitter, n);
      double r = state.universe.importance_at(it->second, n);
      sum += std::pow(d - r + eps * r, p);
    }
  }
  return std::pow(sum, 1.0 / p);
}

std::optional<std::pair<CodeSelection, double>> brute_force_best_p2(
    const ScenarioState& state, double p) {
  std::vector<PacketSet> eligibility;
  for (const auto& dev : state.devices) eligibility.push_back(dev.lacks);

  std::optional<std::pair<CodeSelection, double>> best;
  for (int t = 0; t < state.device_count(); ++t) {
    LocalGraph g = build_local_graph(state, t, eligibility,
                                     [](int, int) { return 0.0; });
    for (const auto& clique : enumerate_cliques(g)) {
      CodeSelection sel = selection_from_clique(g, clique);
      double value = expected_distortion_pnorm(state, sel, p);
      if (!best || value < best->second) best = {std::move(sel), value};
    }
  }
  return best;
}

}  // namespace idnc
