#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idnc/graph.hpp"
#include "idnc/wants.hpp"

namespace idnc {

enum class PolicyKind {
  P1,
  P2,
  ContentAwareLossUnawareP1,
  ContentAwareLossUnawareP2,
  LossAwareIdnc,
  LossUnawareIdnc,
};

std::string to_string(PolicyKind kind);
PolicyKind parse_policy_kind(const std::string& name);

// P1-family policies use Wants-based vertex eligibility; everything else
// codes over the full Lacks sets.
inline bool is_p1_family(PolicyKind kind) {
  return kind == PolicyKind::P1 || kind == PolicyKind::ContentAwareLossUnawareP1;
}

struct PolicyConfig {
  PolicyKind kind = PolicyKind::P1;
  double p_norm = 2.0;
  std::vector<double> d_cons;  // per device; completion-time-minimization runs
  int t_cons = 0;              // quality-maximization runs
  CliqueSolver solver = CliqueSolver::Exact;

  void validate(int device_count) const;
};

// Vertex weight for the completion-time objective: positive only for critical
// packets (members of some minimum-cardinality Wants set).
double weight_p1(int t_n, double eps, double p, bool critical);

// Vertex weight for the distortion objective.
double weight_p2(double d_n, double r_mn, double eps, double p);

// Builds all local graphs under the policy's eligibility and weight rules and
// returns the best global selection. nullopt when no device needs anything.
// `wants` is required for P1-family policies and ignored otherwise.
std::optional<CodeSelection> propose_code(
    const PolicyConfig& policy, const ScenarioState& state,
    const std::vector<WantsFamily>* wants = nullptr);

}  // namespace idnc
