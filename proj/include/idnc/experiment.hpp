#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "idnc/engine.hpp"
#include "idnc/trace.hpp"

namespace idnc {

inline constexpr const char* kResultsSchema = "idnc.results.v1";

enum class Problem { CompletionTime, Distortion };
enum class ImportanceKind { Gamma, Uniform, Trace };

// Gamma importances use mean 1, variance 50: shape 0.02, scale 50.
inline constexpr double kGammaShape = 0.02;
inline constexpr double kGammaScale = 50.0;

struct ExperimentSpec {
  Problem problem = Problem::CompletionTime;
  std::vector<PolicyKind> policies;
  std::vector<int> n_values;
  std::vector<int> m_values;
  std::vector<double> d_cons_fractions;  // of per-device total importance
  std::vector<int> t_cons_values;
  ImportanceKind importance = ImportanceKind::Gamma;
  std::string trace_path;
  int trace_block_size = 10;
  double stage1_loss_min = 0.3, stage1_loss_max = 0.8;
  double d2d_loss_min = 0.0, d2d_loss_max = 0.3;
  double p_norm = 2.0;
  int trials = 1;
  std::uint64_t seed = 1;
  std::string out = "results.csv";
  int max_rounds = 0;  // 0 = automatic
  bool greedy_clique = false;

  void validate() const;  // throws ConfigError
  void emit(std::ostream& os) const;

  bool operator==(const ExperimentSpec&) const = default;
};

ExperimentSpec parse_experiment(std::istream& is);
ExperimentSpec load_experiment(const std::string& path);

struct CellResult {
  PolicyKind policy;
  int n_devices = 0;
  int m_packets = 0;
  double constraint = 0.0;  // d_cons fraction or t_cons
  std::string metric_name;
  double mean = 0.0;
  double stderr_mean = 0.0;
  int trials = 0;
  std::vector<double> samples;  // per trial, paired across policies
};

struct ResultTable {
  std::uint64_t seed = 0;
  std::vector<CellResult> rows;

  std::string to_csv() const;
  const CellResult* find(PolicyKind policy, int n, int m,
                         double constraint) const;
};

// Seeded Monte Carlo over every (policy, N, M, constraint) cell. Scenario and
// channel realizations depend only on (seed, N, M, trial), so all policies
// and constraint values of a cell see identical draws.
ResultTable run_monte_carlo(const ExperimentSpec& spec);

// Presets: fig2a fig2b fig2c fig3a fig3b fig3c table1-style.
// trials == 0 keeps the preset default. table1-style needs a trace path.
ExperimentSpec make_preset(const std::string& name, std::uint64_t seed,
                           int trials, const std::string& trace_path = "");

// Runs the preset and writes its CSV to `out`; returns the table.
ResultTable run_preset(const std::string& name, std::uint64_t seed, int trials,
                       const std::string& out,
                       const std::string& trace_path = "");

void write_csv(const ResultTable& table, const std::string& path);

std::string to_string(Problem p);
std::string to_string(ImportanceKind k);

}  // namespace idnc
