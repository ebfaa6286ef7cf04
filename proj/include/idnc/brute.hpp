#pragma once

// Reference checkers: exhaustive-search counterparts of the production
// enumeration, clique search, and one-step code selection. Deliberately
// written as plain subset scans, independent of the pruned implementations,
// for use by the test suites and the `selftest` CLI verb.

#include <optional>
#include <vector>

#include "idnc/graph.hpp"
#include "idnc/policy.hpp"
#include "idnc/wants.hpp"

namespace idnc {

// All-subsets scan over the Lacks set filtered by admissibility and then by
// inclusion-minimality. Requires |Lacks| <= 20.
WantsFamily brute_force_wants_family(const ScenarioState& state, int device,
                                     double d_cons);

// Every vertex subset checked for pairwise adjacency. Requires <= 20 vertices.
std::optional<CodeSelection> brute_force_max_weight_clique(
    const LocalGraph& graph);

// All cliques of a local graph (nonempty vertex subsets, pairwise adjacent).
std::vector<std::vector<int>> enumerate_cliques(const LocalGraph& graph);

// Expected p-norm of the distortion vector after transmitting `selection`,
// evaluated per covered device from its success probability.
double expected_distortion_pnorm(const ScenarioState& state,
                                 const CodeSelection& selection, double p);

// Exhaustive one-step search for the distortion objective: minimum expected
// p-norm over every clique of every transmitter's local graph (Lacks
// eligibility). Returns nullopt when no graph has vertices.
std::optional<std::pair<CodeSelection, double>> brute_force_best_p2(
    const ScenarioState& state, double p);

}  // namespace idnc
