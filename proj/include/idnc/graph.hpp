#pragma once

#include <bitset>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idnc/model.hpp"

namespace idnc {

inline constexpr int kMaxGraphVertices = 128;

// One coding opportunity: transmitter t sends packet m toward device n.
struct Vertex {
  int transmitter = 0;
  int target = 0;
  int packet = 0;
  double weight = 0.0;
};

// Coding-opportunity graph for a single transmitter. Vertices are ordered by
// (target, packet); adjacency follows the same-packet / mutual-hold rules, so
// every clique is one feasible instantly decodable XOR code.
struct LocalGraph {
  int transmitter = 0;
  std::vector<Vertex> vertices;
  std::vector<std::bitset<kMaxGraphVertices>> adjacency;

  int size() const { return static_cast<int>(vertices.size()); }
  bool adjacent(int i, int j) const { return adjacency[i][j]; }
};

struct CodeSelection {
  int transmitter = 0;
  PacketSet coded_packets;
  std::map<int, int> targets;  // device -> packet it decodes
  double total_weight = 0.0;
};

enum class CliqueSolver { Exact, Greedy };

// eligibility[n] must be a subset of device n's Lacks set; vertices exist for
// eligible packets the transmitter holds. `weight` is evaluated per
// (target, packet).
LocalGraph build_local_graph(const ScenarioState& state, int transmitter,
                             const std::vector<PacketSet>& eligibility,
                             const std::function<double(int, int)>& weight);

// Exact branch-and-bound (ties broken toward the lexicographically smallest
// vertex-index set) or the opt-in greedy approximation.
std::optional<CodeSelection> max_weight_clique(
    const LocalGraph& graph, CliqueSolver solver = CliqueSolver::Exact);

// Best selection across the disjoint local graphs; equal weights break toward
// the lowest transmitter id.
std::optional<CodeSelection> select_global(
    const std::vector<LocalGraph>& graphs,
    CliqueSolver solver = CliqueSolver::Exact);

CodeSelection selection_from_clique(const LocalGraph& graph,
                                    const std::vector<int>& clique);

// Plain-text fixture dump: one "v t n m w" line per vertex, then "e i j" pairs.
std::string dump_graph(const LocalGraph& graph);

}  // namespace idnc
