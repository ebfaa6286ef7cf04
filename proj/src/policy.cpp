#include "idnc/policy.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "idnc/errors.hpp"

namespace idnc {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::P1: return "P1";
    case PolicyKind::P2: return "P2";
    case PolicyKind::ContentAwareLossUnawareP1: return "ContentAwareLossUnawareP1";
    case PolicyKind::ContentAwareLossUnawareP2: return "ContentAwareLossUnawareP2";
    case PolicyKind::LossAwareIdnc: return "LossAwareIdnc";
    case PolicyKind::LossUnawareIdnc: return "LossUnawareIdnc";
  }
  throw InternalError("unknown policy kind");
}

PolicyKind parse_policy_kind(const std::string& name) {
  for (PolicyKind k :
       {PolicyKind::P1, PolicyKind::P2, PolicyKind::ContentAwareLossUnawareP1,
        PolicyKind::ContentAwareLossUnawareP2, PolicyKind::LossAwareIdnc,
        PolicyKind::LossUnawareIdnc}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown policy kind: " + name);
}

void PolicyConfig::validate(int device_count) const {
  if (p_norm < 1.0) throw std::invalid_argument("p_norm must be >= 1");
  if (is_p1_family(kind) &&
      static_cast<int>(d_cons.size()) != device_count) {
    throw std::invalid_argument("P1-family policies need per-device d_cons");
  }
  for (double d : d_cons) {
    if (d < 0.0) throw std::invalid_argument("d_cons must be >= 0");
  }
  if ((kind == PolicyKind::P2 || kind == PolicyKind::ContentAwareLossUnawareP2) &&
      t_cons < 0) {
    throw std::invalid_argument("t_cons must be >= 0");
  }
}

double weight_p1(int t_n, double eps, double p, bool critical) {
  if (!critical) return 0.0;
  return std::pow(t_n, p) - std::pow(t_n - 1.0 + eps, p);
}

double weight_p2(double d_n, double r_mn, double eps, double p) {
  return std::pow(d_n, p) - std::pow(d_n - r_mn + eps * r_mn, p);
}

namespace {

void verify_selection(const ScenarioState& state, const CodeSelection& sel) {
  require(!sel.targets.empty(), "selection must target at least one device");
  const DeviceState& tx = state.devices[sel.transmitter];
  for (int m : sel.coded_packets) {
    require(tx.has.count(m) > 0, "transmitter does not hold a coded packet");
  }
  for (const auto& [n, m] : sel.targets) {
    require(n != sel.transmitter, "transmitter cannot target itself");
    int unknown = 0;
    for (int c : sel.coded_packets) unknown += state.devices[n].lacks.count(c);
    require(unknown == 1, "selection is not instantly decodable for a target");
    require(state.devices[n].lacks.count(m) == 1,
            "targeted packet is not missing at the target");
  }
}

}  // namespace

std::optional<CodeSelection> propose_code(const PolicyConfig& policy,
                                          const ScenarioState& state,
                                          const std::vector<WantsFamily>* wants) {
  const int n_devices = state.device_count();
  policy.validate(n_devices);
  const bool p1fam = is_p1_family(policy.kind);
  if (p1fam && wants == nullptr) {
    throw std::invalid_argument("P1-family proposals need Wants families");
  }

  std::vector<PacketSet> eligibility(n_devices);
  bool any = false;
  for (int n = 0; n < n_devices; ++n) {
    if (p1fam) {
      for (const auto& set : (*wants)[n].sets) {
        eligibility[n].insert(set.begin(), set.end());
      }
    } else {
      eligibility[n] = state.devices[n].lacks;
    }
    any = any || !eligibility[n].empty();
  }
  if (!any) return std::nullopt;

  const double p = policy.p_norm;
  std::vector<LocalGraph> graphs;
  graphs.reserve(n_devices);
  for (int t = 0; t < n_devices; ++t) {
    auto eps = [&](int n) {
      bool loss_aware = policy.kind == PolicyKind::P1 ||
                        policy.kind == PolicyKind::P2 ||
                        policy.kind == PolicyKind::LossAwareIdnc;
      return loss_aware ? state.channel.loss(t, n) : 0.0;
    };
    std::function<double(int, int)> weight;
    switch (policy.kind) {
      case PolicyKind::P1:
      case PolicyKind::ContentAwareLossUnawareP1:
        weight = [&, t](int n, int m) {
          const WantsFamily& fam = (*wants)[n];
          bool critical = false;
          for (const auto& set : fam.sets) {
            if (static_cast<int>(set.size()) == fam.completion_time &&
                set.count(m)) {
              critical = true;
              break;
            }
          }
          return weight_p1(fam.completion_time, eps(n), p, critical);
        };
        break;
      case PolicyKind::P2:
      case PolicyKind::ContentAwareLossUnawareP2:
        weight = [&, t](int n, int m) {
          return weight_p2(state.devices[n].distortion,
                           state.universe.importance_at(m, n), eps(n), p);
        };
        break;
      case PolicyKind::LossAwareIdnc:
        weight = [&, t](int n, int) {
          return (1.0 - eps(n)) *
                 static_cast<double>(state.devices[n].lacks.size());
        };
        break;
      case PolicyKind::LossUnawareIdnc:
        // Base weight here; the neighbourhood term is filled in below once
        // the adjacency exists.
        weight = [&](int n, int) {
          return static_cast<double>(state.devices[n].lacks.size());
        };
        break;
    }
    LocalGraph g = build_local_graph(state, t, eligibility, weight);
    if (policy.kind == PolicyKind::LossUnawareIdnc) {
      for (int i = 0; i < g.size(); ++i) {
        std::set<int> neighbour_targets;
        for (int j = 0; j < g.size(); ++j) {
          if (g.adjacent(i, j)) neighbour_targets.insert(g.vertices[j].target);
        }
        for (int k : neighbour_targets) {
          g.vertices[i].weight +=
              static_cast<double>(state.devices[k].lacks.size());
        }
      }
    }
    graphs.push_back(std::move(g));
  }

  auto sel = select_global(graphs, policy.solver);
  require(sel.has_value(),
          "eligible packets exist but no coding opportunity was found");

  // All-zero weights still demand progress: fall back to the largest clique.
  if (sel->total_weight == 0.0) {
    std::vector<LocalGraph> unit = graphs;
    for (auto& g : unit) {
      for (auto& v : g.vertices) v.weight = 1.0;
    }
    auto fallback = select_global(unit, policy.solver);
    require(fallback.has_value(), "unit-weight fallback found no clique");
    fallback->total_weight = 0.0;
    sel = std::move(fallback);
  }

  verify_selection(state, *sel);
  return sel;
}

}  // namespace idnc
