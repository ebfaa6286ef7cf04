// Command-line front end: explicit experiment runs, the figure-style presets,
// trace inspection, and the brute-force self-test suites.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "idnc/brute.hpp"
#include "idnc/engine.hpp"
#include "idnc/errors.hpp"
#include "idnc/experiment.hpp"
#include "idnc/trace.hpp"

namespace {

struct Overrides {
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 0;
  std::string out;
  double p_norm = 0.0;
  bool greedy = false;
  int max_rounds = -1;
};

void apply(const Overrides& ov, idnc::ExperimentSpec& spec) {
  if (ov.seed_set) spec.seed = ov.seed;
  if (ov.trials > 0) spec.trials = ov.trials;
  if (!ov.out.empty()) spec.out = ov.out;
  if (ov.p_norm > 0.0) spec.p_norm = ov.p_norm;
  if (ov.greedy) spec.greedy_clique = true;
  if (ov.max_rounds >= 0) spec.max_rounds = ov.max_rounds;
}

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--seed", ov.seed, "master seed")
      ->each([&ov](const std::string&) { ov.seed_set = true; });
  cmd->add_option("--trials", ov.trials, "Monte Carlo trials per cell");
  cmd->add_option("--out", ov.out, "output CSV path");
  cmd->add_option("--p-norm", ov.p_norm, "p of the p-norm objective");
  cmd->add_flag("--greedy-clique", ov.greedy,
                "approximate clique search instead of exact branch-and-bound");
  cmd->add_option("--max-rounds", ov.max_rounds,
                  "round guard for p1 episodes (0 = automatic)");
}

idnc::ScenarioState random_selftest_scenario(idnc::Rng& rng, int n_devices,
                                             int m_packets) {
  std::vector<double> matrix;
  for (int i = 0; i < m_packets * n_devices; ++i) {
    matrix.push_back(rng.uniform(0.0, 10.0));
  }
  auto universe = idnc::PacketUniverse::from_matrix(m_packets, n_devices,
                                                    std::move(matrix));
  auto channel = idnc::ChannelModel::uniform_random(n_devices, 0.5, 0.5, 0.0,
                                                    0.5, rng);
  return idnc::apply_stage1(universe, channel, rng);
}

int run_selftest() {
  using namespace idnc;
  int failures = 0;
  Rng rng(20240915);

  {
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
      auto state = random_selftest_scenario(rng, 3, rng.uniform_int(4, 10));
      double d_cons = rng.uniform(0.0, state.universe.total_importance(0));
      auto fast = enumerate_wants_family(state, 0, d_cons);
      auto slow = brute_force_wants_family(state, 0, d_cons);
      if (fast.sets != slow.sets || fast.completion_time != slow.completion_time) {
        ++mismatches;
      }
    }
    std::printf("%s wants-family enumeration vs brute force (100 instances)\n",
                mismatches == 0 ? "PASS" : "FAIL");
    failures += mismatches != 0;
  }
  {
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
      auto state = random_selftest_scenario(rng, 4, rng.uniform_int(3, 6));
      std::vector<PacketSet> elig;
      for (const auto& dev : state.devices) elig.push_back(dev.lacks);
      auto g = build_local_graph(state, 0, elig, [&](int n, int m) {
        return state.universe.importance_at(m, n);
      });
      auto fast = max_weight_clique(g);
      auto slow = brute_force_max_weight_clique(g);
      if (fast.has_value() != slow.has_value()) {
        ++mismatches;
      } else if (fast && std::abs(fast->total_weight - slow->total_weight) >
                             1e-9) {
        ++mismatches;
      }
    }
    std::printf("%s max-weight clique vs exhaustive search (100 graphs)\n",
                mismatches == 0 ? "PASS" : "FAIL");
    failures += mismatches != 0;
  }
  {
    int mismatches = 0;
    for (int i = 0; i < 50; ++i) {
      auto state = random_selftest_scenario(rng, 3, rng.uniform_int(3, 4));
      PolicyConfig cfg;
      cfg.kind = PolicyKind::P2;
      cfg.t_cons = 1;
      auto sel = propose_code(cfg, state);
      auto best = brute_force_best_p2(state, cfg.p_norm);
      if (sel.has_value() != best.has_value()) {
        ++mismatches;
      } else if (sel &&
                 std::abs(expected_distortion_pnorm(state, *sel, cfg.p_norm) -
                          best->second) > 1e-9) {
        ++mismatches;
      }
    }
    std::printf("%s one-step P2 selection vs exhaustive expectation (50)\n",
                mismatches == 0 ? "PASS" : "FAIL");
    failures += mismatches != 0;
  }
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IDNC device-to-device packet recovery simulator"};
  app.require_subcommand(1);

  std::string config_path, preset_name, trace_path, info_path;
  int info_block = 10;
  Overrides ov;

  auto* run_cmd = app.add_subcommand("run", "run an experiment config file");
  run_cmd->add_option("config", config_path, "experiment config file")
      ->required();
  add_override_flags(run_cmd, ov);

  auto* preset_cmd = app.add_subcommand(
      "preset", "run a canned experiment (fig2a fig2b fig2c fig3a fig3b fig3c "
                "table1-style)");
  preset_cmd->add_option("name", preset_name, "preset name")->required();
  preset_cmd->add_option("--trace", trace_path,
                         "importance trace for table1-style");
  add_override_flags(preset_cmd, ov);

  auto* info_cmd = app.add_subcommand("trace-info", "inspect a trace file");
  info_cmd->add_option("path", info_path, "trace CSV")->required();
  info_cmd->add_option("--block-size", info_block, "packets per block");

  app.add_subcommand("selftest", "run the brute-force oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      idnc::ExperimentSpec spec = idnc::load_experiment(config_path);
      apply(ov, spec);
      auto table = idnc::run_monte_carlo(spec);
      idnc::write_csv(table, spec.out);
      std::cout << "wrote " << table.rows.size() << " rows to " << spec.out
                << "\n";
    } else if (preset_cmd->parsed()) {
      idnc::ExperimentSpec spec =
          idnc::make_preset(preset_name, 1, 0, trace_path);
      apply(ov, spec);
      if (ov.out.empty()) spec.out = preset_name + ".csv";
      auto table = idnc::run_monte_carlo(spec);
      idnc::write_csv(table, spec.out);
      std::cout << "wrote " << table.rows.size() << " rows to " << spec.out
                << "\n";
    } else if (info_cmd->parsed()) {
      auto trace = idnc::load_trace(info_path, info_block);
      std::cout << "blocks: " << trace.block_count()
                << " block_size: " << trace.block_size << "\n";
      for (int b = 0; b < trace.block_count(); ++b) {
        double total = 0.0, peak = 0.0;
        for (double r : trace.blocks[b]) {
          total += r;
          peak = std::max(peak, r);
        }
        std::cout << "block " << b << ": total importance " << total
                  << ", max " << peak << "\n";
      }
    } else {
      return run_selftest();
    }
  } catch (const idnc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const idnc::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const idnc::InternalError& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
