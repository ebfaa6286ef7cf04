// End-to-end acceptance checks, one PASS/FAIL line each. Exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "idnc/brute.hpp"
#include "idnc/engine.hpp"
#include "idnc/experiment.hpp"

using namespace idnc;
using namespace idnc_test;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok, double seconds,
            const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL",
              index, name.c_str(), seconds, detail.empty() ? "" : " ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

class Timer {
 public:
  double elapsed() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

ScenarioState single_device_setup(const std::vector<double>& importance,
                                  const PacketSet& has) {
  auto universe = PacketUniverse::broadcast(2, importance);
  auto channel = ChannelModel::lossless(2);
  PacketSet other;
  for (int m = 0; m < universe.packet_count; ++m) {
    if (!has.count(m)) other.insert(m);
  }
  return make_scenario(universe, channel, {has, other});
}

LocalGraph random_graph(Rng& rng, int vertex_count, double edge_prob,
                        bool tie_heavy) {
  LocalGraph g;
  g.transmitter = 0;
  for (int i = 0; i < vertex_count; ++i) {
    double w = tie_heavy ? 0.5 * rng.uniform_int(0, 4) : rng.uniform(0.0, 5.0);
    g.vertices.push_back({0, i, i, w});
  }
  g.adjacency.assign(vertex_count, {});
  for (int i = 0; i < vertex_count; ++i) {
    for (int j = i + 1; j < vertex_count; ++j) {
      if (rng.uniform() < edge_prob) {
        g.adjacency[i].set(j);
        g.adjacency[j].set(i);
      }
    }
  }
  return g;
}

struct Paired {
  double mean_diff;
  double ci_lo;
  double ci_hi;
};

// 95% confidence interval for mean(a - b) over paired samples.
Paired paired_interval(const std::vector<double>& a,
                       const std::vector<double>& b) {
  const std::size_t n = a.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= n;
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i] - mean;
    var += d * d;
  }
  double se = std::sqrt(var / (n - 1.0) / n);
  return {mean, mean - 1.96 * se, mean + 1.96 * se};
}

void criterion1() {
  Timer timer;
  auto state = single_device_setup({4.0, 5.0, 3.0, 1.0}, {p1});
  auto family = enumerate_wants_family(state, 0, 5.0);
  bool family_ok = family.sets ==
                       std::vector<PacketSet>{{p2}, {p3, p4}} &&
                   family.completion_time == 1;
  bool bounds_ok = completion_time_bounds({{1, 2, 3}}) ==
                   std::pair<int, int>{3, 6};
  report(1, "worked examples: minimal-set family and completion bounds",
         family_ok && bounds_ok, timer.elapsed());
}

void criterion2() {
  Timer timer;
  auto state = three_device_scenario();
  PolicyConfig cfg;
  cfg.kind = PolicyKind::P1;
  cfg.d_cons.assign(3, 0.0);
  auto result = run_episode_p1(state, cfg, 1);

  bool ok = result.rounds_used == 2 && result.records.size() == 2;
  if (ok) {
    PacketSet first = result.records[0].coded;
    PacketSet second = result.records[1].coded;
    PacketSet code_a = {p2, p3};
    PacketSet code_b = {p1, p4};
    ok = (first == code_a && second == code_b) ||
         (first == code_b && second == code_a);
  }
  report(2, "three-device exchange finishes in two coded rounds", ok,
         timer.elapsed());
}

void criterion3() {
  Timer timer;
  int wants_mismatch = 0;
  {
    Rng rng(0xACCE01);
    for (int trial = 0; trial < 500; ++trial) {
      auto state = random_scenario(rng, 3, rng.uniform_int(4, 12), 0.6, 0.0,
                                   0.0, trial % 3 == 0);
      int n = rng.uniform_int(0, state.device_count() - 1);
      double d_cons = rng.uniform(0.0, state.universe.total_importance(n));
      auto fast = enumerate_wants_family(state, n, d_cons);
      auto slow = brute_force_wants_family(state, n, d_cons);
      if (fast.sets != slow.sets ||
          fast.completion_time != slow.completion_time) {
        ++wants_mismatch;
      }
    }
  }

  int clique_mismatch = 0;
  {
    Rng rng(0xACCE02);
    for (int trial = 0; trial < 500; ++trial) {
      auto g = random_graph(rng, rng.uniform_int(1, 16), rng.uniform(0.1, 0.9),
                            trial % 2 == 0);
      auto fast = max_weight_clique(g);
      auto slow = brute_force_max_weight_clique(g);
      if (!fast || !slow ||
          std::abs(fast->total_weight - slow->total_weight) > 1e-9 ||
          fast->targets != slow->targets) {
        ++clique_mismatch;
      }
    }
  }

  int p2_mismatch = 0;
  {
    Rng rng(0xACCE03);
    int checked = 0;
    while (checked < 200) {
      auto state = random_scenario(rng, 3, 4, 0.5, 0.0, 0.5);
      if (state.packet_count() == 0) continue;
      ++checked;
      PolicyConfig cfg;
      cfg.kind = PolicyKind::P2;
      cfg.t_cons = 1;
      auto sel = propose_code(cfg, state);
      auto best = brute_force_best_p2(state, cfg.p_norm);
      if (sel.has_value() != best.has_value()) {
        ++p2_mismatch;
        continue;
      }
      if (sel && std::abs(expected_distortion_pnorm(state, *sel, cfg.p_norm) -
                          best->second) > 1e-9) {
        ++p2_mismatch;
      }
    }
  }

  char detail[128];
  std::snprintf(detail, sizeof detail,
                "mismatches: wants=%d clique=%d distortion=%d", wants_mismatch,
                clique_mismatch, p2_mismatch);
  report(3, "oracle suites agree with exhaustive search",
         wants_mismatch == 0 && clique_mismatch == 0 && p2_mismatch == 0,
         timer.elapsed(), detail);
}

void criterion4() {
  Timer timer;
  Rng rng(0xACCE04);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto state = random_scenario(rng, rng.uniform_int(3, 8),
                                 rng.uniform_int(2, 8), 0.5);
    if (state.packet_count() == 0) continue;
    PolicyConfig cfg;
    cfg.kind = PolicyKind::P1;
    cfg.d_cons.assign(state.device_count(), 0.0);

    CompletionVector times;
    for (int n = 0; n < state.device_count(); ++n) {
      times.values.push_back(
          enumerate_wants_family(state, n, 0.0).completion_time);
    }
    auto [lo, hi] = completion_time_bounds(times);
    auto result = run_episode_p1(state, cfg, rng.next());
    if (!result.terminated_normally || result.rounds_used < lo ||
        result.rounds_used > hi) {
      ++violations;
    }
  }
  char detail[64];
  std::snprintf(detail, sizeof detail, "violations=%d", violations);
  report(4, "lossless completion stays inside the analytic bounds",
         violations == 0, timer.elapsed(), detail);
}

void criteria5and6() {
  Timer timer;
  ExperimentSpec spec;
  spec.problem = Problem::CompletionTime;
  spec.policies = {PolicyKind::P1, PolicyKind::ContentAwareLossUnawareP1,
                   PolicyKind::LossAwareIdnc, PolicyKind::LossUnawareIdnc};
  spec.n_values = {10};
  spec.m_values = {10};
  spec.d_cons_fractions = {0.0, 0.2};
  spec.trials = 500;
  spec.seed = 0xACCE05;
  auto table = run_monte_carlo(spec);
  double setup_seconds = timer.elapsed();

  auto cell = [&](PolicyKind k, double frac) {
    return table.find(k, 10, 10, frac);
  };
  const auto* p1 = cell(PolicyKind::P1, 0.2);
  const auto* calu = cell(PolicyKind::ContentAwareLossUnawareP1, 0.2);
  const auto* aware = cell(PolicyKind::LossAwareIdnc, 0.2);
  const auto* unaware = cell(PolicyKind::LossUnawareIdnc, 0.2);

  bool ordering = p1->mean <= calu->mean + 1e-12 &&
                  p1->mean <= aware->mean + 1e-12 &&
                  p1->mean <= unaware->mean + 1e-12;
  auto ci = paired_interval(unaware->samples, p1->samples);
  bool significant = ci.ci_lo > 0.0;

  char detail[160];
  std::snprintf(detail, sizeof detail,
                "mean T: P1=%.3f calu=%.3f aware=%.3f unaware=%.3f, paired "
                "diff CI [%.3f, %.3f]",
                p1->mean, calu->mean, aware->mean, unaware->mean, ci.ci_lo,
                ci.ci_hi);
  report(5, "completion-time ordering with a significant paired margin",
         ordering && significant, setup_seconds, detail);

  Timer timer6;
  const auto* p1_zero = cell(PolicyKind::P1, 0.0);
  const auto* aware_zero = cell(PolicyKind::LossAwareIdnc, 0.0);
  double gap = std::abs(p1_zero->mean - aware_zero->mean);
  bool near = gap <= 0.05 * aware_zero->mean;
  char detail6[128];
  std::snprintf(detail6, sizeof detail6,
                "zero-tolerance mean T: P1=%.3f aware=%.3f (gap %.2f%%)",
                p1_zero->mean, aware_zero->mean,
                100.0 * gap / aware_zero->mean);
  report(6, "zero tolerance closes the gap to the loss-aware baseline", near,
         timer6.elapsed(), detail6);
}

void criterion7() {
  Timer timer;
  ExperimentSpec spec;
  spec.problem = Problem::Distortion;
  spec.policies = {PolicyKind::P2, PolicyKind::ContentAwareLossUnawareP2,
                   PolicyKind::LossAwareIdnc, PolicyKind::LossUnawareIdnc};
  spec.n_values = {10};
  spec.m_values = {10};
  spec.t_cons_values = {3};
  spec.trials = 500;
  spec.seed = 0xACCE07;
  auto table = run_monte_carlo(spec);

  const auto* p2 = table.find(PolicyKind::P2, 10, 10, 3.0);
  const auto* calu = table.find(PolicyKind::ContentAwareLossUnawareP2, 10, 10, 3.0);
  const auto* aware = table.find(PolicyKind::LossAwareIdnc, 10, 10, 3.0);
  const auto* unaware = table.find(PolicyKind::LossUnawareIdnc, 10, 10, 3.0);

  bool ordering = p2->mean <= calu->mean + 1e-12 &&
                  p2->mean <= aware->mean + 1e-12 &&
                  p2->mean <= unaware->mean + 1e-12;
  auto ci = paired_interval(unaware->samples, p2->samples);
  bool significant = ci.ci_lo > 0.0;
  double improvement = 100.0 * (unaware->mean - p2->mean) / unaware->mean;

  // The reference improvement range comes from trace-driven importances, so
  // report the sample-trace regime alongside the gamma one.
  auto trace_spec = make_preset("table1-style", 0xACCE17, 500, SAMPLE_TRACE_PATH);
  auto trace_table = run_monte_carlo(trace_spec);
  const auto* tr_p2 = trace_table.find(PolicyKind::P2, 10, 10, 3.0);
  const auto* tr_unaware =
      trace_table.find(PolicyKind::LossUnawareIdnc, 10, 10, 3.0);
  double trace_improvement =
      100.0 * (tr_unaware->mean - tr_p2->mean) / tr_unaware->mean;

  char detail[280];
  std::snprintf(detail, sizeof detail,
                "mean distortion norm: P2=%.3f calu=%.3f aware=%.3f "
                "unaware=%.3f; improvement over unaware %.1f%% gamma, "
                "%.1f%% sample trace (reference range 18.9-25.1%%, "
                "informational)",
                p2->mean, calu->mean, aware->mean, unaware->mean, improvement,
                trace_improvement);
  report(7, "distortion ordering with a significant paired margin",
         ordering && significant, timer.elapsed(), detail);
}

void criterion8() {
  Timer timer;
  bool monotone = true;
  for (int ti = 1; ti <= 20; ++ti) {
    for (int ei = 0; ei < 20; ++ei) {
      double eps = ei / 20.0;
      double next = (ei + 1) / 20.0 - 1e-6;
      if (weight_p1(ti, next, 2.0, true) >= weight_p1(ti, eps, 2.0, true)) {
        monotone = false;
      }
    }
  }
  const double d_n = 25.0;
  for (int ri = 0; ri < 20; ++ri) {
    double r = (ri + 1) * d_n / 20.0;
    double r_prev = ri * d_n / 20.0;
    for (int ei = 0; ei < 20; ++ei) {
      double eps = ei / 20.0;
      double next = (ei + 1) / 20.0 - 1e-6;
      if (weight_p2(d_n, r, next, 2.0) >= weight_p2(d_n, r, eps, 2.0)) {
        monotone = false;
      }
      if (weight_p2(d_n, r, eps, 2.0) <= weight_p2(d_n, r_prev, eps, 2.0)) {
        monotone = false;
      }
    }
  }

  int degeneracy_mismatch = 0;
  Rng rng(0xACCE08);
  for (int trial = 0; trial < 100; ++trial) {
    auto state = random_scenario(rng, 4, 7, 0.5, 0.0, 0.0);  // eps == 0
    if (state.packet_count() == 0) continue;

    PolicyConfig p2_cfg;
    p2_cfg.kind = PolicyKind::P2;
    p2_cfg.t_cons = 1;
    PolicyConfig calu2 = p2_cfg;
    calu2.kind = PolicyKind::ContentAwareLossUnawareP2;
    auto a = propose_code(p2_cfg, state);
    auto b = propose_code(calu2, state);
    if (a.has_value() != b.has_value() ||
        (a && (a->transmitter != b->transmitter ||
               a->coded_packets != b->coded_packets ||
               a->targets != b->targets))) {
      ++degeneracy_mismatch;
    }

    PolicyConfig p1_cfg;
    p1_cfg.kind = PolicyKind::P1;
    for (int n = 0; n < state.device_count(); ++n) {
      p1_cfg.d_cons.push_back(0.3 * state.universe.total_importance(n));
    }
    PolicyConfig calu1 = p1_cfg;
    calu1.kind = PolicyKind::ContentAwareLossUnawareP1;
    std::vector<WantsFamily> fams;
    for (int n = 0; n < state.device_count(); ++n) {
      fams.push_back(enumerate_wants_family(state, n, p1_cfg.d_cons[n]));
    }
    auto c = propose_code(p1_cfg, state, &fams);
    auto d = propose_code(calu1, state, &fams);
    if (c.has_value() != d.has_value() ||
        (c && (c->transmitter != d->transmitter ||
               c->coded_packets != d->coded_packets ||
               c->targets != d->targets))) {
      ++degeneracy_mismatch;
    }
  }

  char detail[96];
  std::snprintf(detail, sizeof detail, "degeneracy mismatches=%d",
                degeneracy_mismatch);
  report(8, "weight monotonicity and lossless policy degeneracy",
         monotone && degeneracy_mismatch == 0, timer.elapsed(), detail);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void criterion9() {
  Timer timer;
  const std::string out_a = "acceptance_rerun_a.csv";
  const std::string out_b = "acceptance_rerun_b.csv";
  run_preset("fig3c", 0xACCE09, 20, out_a);
  run_preset("fig3c", 0xACCE09, 20, out_b);
  std::string a = slurp(out_a);
  std::string b = slurp(out_b);
  std::remove(out_a.c_str());
  std::remove(out_b.c_str());
  report(9, "preset reruns emit byte-identical results", !a.empty() && a == b,
         timer.elapsed());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criteria5and6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
