#include "idnc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "idnc/errors.hpp"

namespace idnc {

namespace {

using Bits = std::bitset<kMaxGraphVertices>;

bool lex_smaller(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const LocalGraph& g) : g_(g) {
    order_.resize(g.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (g.vertices[a].weight != g.vertices[b].weight) {
        return g.vertices[a].weight > g.vertices[b].weight;
      }
      return a < b;
    });
  }

  std::vector<int> solve() {
    Bits all;
    for (int i = 0; i < g_.size(); ++i) all.set(i);
    double total = 0.0;
    for (const auto& v : g_.vertices) total += v.weight;
    std::vector<int> current;
    expand(current, 0.0, all, total);
    return best_;
  }

 private:
  void consider(const std::vector<int>& clique, double weight) {
    if (clique.empty()) return;
    std::vector<int> sorted = clique;
    std::sort(sorted.begin(), sorted.end());
    if (weight > best_weight_ ||
        (weight == best_weight_ && lex_smaller(sorted, best_))) {
      best_weight_ = weight;
      best_ = std::move(sorted);
    }
  }

  void expand(std::vector<int>& current, double cur_weight, Bits cand,
              double cand_weight) {
    if (cand.none()) {
      consider(current, cur_weight);
      return;
    }
    // Strict bound so equal-weight cliques stay reachable for tie-breaking.
    for (int oi = 0; oi < g_.size(); ++oi) {
      int v = order_[oi];
      if (!cand[v]) continue;
      if (cur_weight + cand_weight < best_weight_) return;
      current.push_back(v);
      Bits next = cand & g_.adjacency[v];
      double next_weight = 0.0;
      for (int i = 0; i < g_.size(); ++i) {
        if (next[i]) next_weight += g_.vertices[i].weight;
      }
      expand(current, cur_weight + g_.vertices[v].weight, next, next_weight);
      current.pop_back();
      cand.reset(v);
      cand_weight -= g_.vertices[v].weight;
    }
    consider(current, cur_weight);
  }

  const LocalGraph& g_;
  std::vector<int> order_;
  std::vector<int> best_;
  double best_weight_ = -1.0;
};

std::vector<int> greedy_clique(const LocalGraph& g) {
  Bits cand;
  for (int i = 0; i < g.size(); ++i) cand.set(i);
  std::vector<int> clique;
  while (cand.any()) {
    int pick = -1;
    for (int i = 0; i < g.size(); ++i) {
      if (!cand[i]) continue;
      if (pick < 0 || g.vertices[i].weight > g.vertices[pick].weight) pick = i;
    }
    clique.push_back(pick);
    cand &= g.adjacency[pick];
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

}  // namespace

LocalGraph build_local_graph(const ScenarioState& state, int transmitter,
                             const std::vector<PacketSet>& eligibility,
                             const std::function<double(int, int)>& weight) {
  if (transmitter < 0 || transmitter >= state.device_count()) {
    throw std::invalid_argument("transmitter id out of range");
  }
  if (static_cast<int>(eligibility.size()) != state.device_count()) {
    throw std::invalid_argument("eligibility size must match device count");
  }
  LocalGraph g;
  g.transmitter = transmitter;
  const PacketSet& held = state.devices[transmitter].has;
  for (int n = 0; n < state.device_count(); ++n) {
    if (n == transmitter) continue;
    for (int m : eligibility[n]) {
      if (!state.devices[n].lacks.count(m)) {
        throw std::invalid_argument("eligible packet outside the Lacks set");
      }
      if (held.count(m)) {
        g.vertices.push_back({transmitter, n, m, weight(n, m)});
      }
    }
  }
  if (g.size() > kMaxGraphVertices) {
    throw CapacityError("local graph exceeds the solver vertex cap");
  }
  g.adjacency.assign(g.vertices.size(), {});
  for (int i = 0; i < g.size(); ++i) {
    for (int j = i + 1; j < g.size(); ++j) {
      const Vertex& a = g.vertices[i];
      const Vertex& b = g.vertices[j];
      bool same_packet = a.packet == b.packet;
      bool mutual_hold = state.devices[b.target].has.count(a.packet) &&
                         state.devices[a.target].has.count(b.packet);
      if (same_packet || mutual_hold) {
        g.adjacency[i].set(j);
        g.adjacency[j].set(i);
      }
    }
  }
  return g;
}

CodeSelection selection_from_clique(const LocalGraph& graph,
                                    const std::vector<int>& clique) {
  require(!clique.empty(), "clique must be nonempty");
  CodeSelection sel;
  sel.transmitter = graph.transmitter;
  for (int i : clique) {
    const Vertex& v = graph.vertices[i];
    sel.coded_packets.insert(v.packet);
    auto [it, inserted] = sel.targets.emplace(v.target, v.packet);
    require(inserted || it->second == v.packet,
            "clique targets one device with two different packets");
    sel.total_weight += v.weight;
  }
  return sel;
}

std::optional<CodeSelection> max_weight_clique(const LocalGraph& graph,
                                               CliqueSolver solver) {
  if (graph.vertices.empty()) return std::nullopt;
  if (graph.size() > kMaxGraphVertices) {
    throw CapacityError("graph too large for the exact solver; use greedy mode");
  }
  std::vector<int> clique = solver == CliqueSolver::Greedy
                                ? greedy_clique(graph)
                                : BranchAndBound(graph).solve();
  return selection_from_clique(graph, clique);
}

std::optional<CodeSelection> select_global(const std::vector<LocalGraph>& graphs,
                                           CliqueSolver solver) {
  std::optional<CodeSelection> best;
  for (const auto& g : graphs) {
    auto sel = max_weight_clique(g, solver);
    if (!sel) continue;
    if (!best || sel->total_weight > best->total_weight) best = std::move(sel);
  }
  return best;
}

std::string dump_graph(const LocalGraph& graph) {
  std::ostringstream os;
  for (const auto& v : graph.vertices) {
    os << "v " << v.transmitter << ' ' << v.target << ' ' << v.packet << ' '
       << v.weight << '\n';
  }
  for (int i = 0; i < graph.size(); ++i) {
    for (int j = i + 1; j < graph.size(); ++j) {
      if (graph.adjacent(i, j)) os << "e " << i << ' ' << j << '\n';
    }
  }
  return os.str();
}

}  // namespace idnc
