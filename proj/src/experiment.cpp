#include "idnc/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "idnc/errors.hpp"

namespace idnc {

std::string to_string(Problem p) {
  return p == Problem::CompletionTime ? "p1" : "p2";
}

std::string to_string(ImportanceKind k) {
  switch (k) {
    case ImportanceKind::Gamma: return "gamma";
    case ImportanceKind::Uniform: return "uniform";
    case ImportanceKind::Trace: return "trace";
  }
  throw InternalError("unknown importance kind");
}

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

template <typename T, typename Fn>
std::string join(const std::vector<T>& values, Fn&& fn) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fn(values[i]);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for '" + key + "': " + s);
  }
}

long long parse_int(const std::string& s, const std::string& key) {
  try {
    std::size_t used;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for '" + key + "': " + s);
  }
}

}  // namespace

void ExperimentSpec::validate() const {
  if (policies.empty()) throw ConfigError("no policies configured");
  if (n_values.empty()) throw ConfigError("n_values must be nonempty");
  if (importance != ImportanceKind::Trace && m_values.empty()) {
    throw ConfigError("m_values must be nonempty");
  }
  for (int n : n_values) {
    if (n < 2) throw ConfigError("need at least two devices");
  }
  for (int m : m_values) {
    if (m < 1) throw ConfigError("need at least one packet");
  }
  if (problem == Problem::CompletionTime) {
    if (d_cons_fractions.empty()) {
      throw ConfigError("p1 experiments need d_cons_fractions");
    }
    for (double f : d_cons_fractions) {
      if (f < 0.0 || f > 1.0) {
        throw ConfigError("d_cons fraction must lie in [0,1]");
      }
    }
    for (PolicyKind k : policies) {
      if (k == PolicyKind::P2 || k == PolicyKind::ContentAwareLossUnawareP2) {
        throw ConfigError("P2-family policy in a p1 experiment");
      }
    }
  } else {
    if (t_cons_values.empty()) {
      throw ConfigError("p2 experiments need t_cons_values");
    }
    for (int t : t_cons_values) {
      if (t < 0) throw ConfigError("t_cons must be >= 0");
    }
    for (PolicyKind k : policies) {
      if (is_p1_family(k)) throw ConfigError("P1-family policy in a p2 experiment");
    }
  }
  if (importance == ImportanceKind::Trace && trace_path.empty()) {
    throw ConfigError("trace importance needs trace_path");
  }
  if (trace_block_size < 1) throw ConfigError("trace_block_size must be >= 1");
  if (stage1_loss_min < 0.0 || stage1_loss_max > 1.0 ||
      stage1_loss_min > stage1_loss_max) {
    throw ConfigError("stage-1 loss range must satisfy 0 <= min <= max <= 1");
  }
  if (d2d_loss_min < 0.0 || d2d_loss_max >= 1.0 ||
      d2d_loss_min > d2d_loss_max) {
    throw ConfigError("D2D loss range must satisfy 0 <= min <= max < 1");
  }
  if (p_norm < 1.0) throw ConfigError("p_norm must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (max_rounds < 0) throw ConfigError("max_rounds must be >= 0");
}

void ExperimentSpec::emit(std::ostream& os) const {
  os << "problem = " << to_string(problem) << '\n';
  os << "policies = "
     << join(policies, [](PolicyKind k) { return to_string(k); }) << '\n';
  os << "n_values = "
     << join(n_values, [](int v) { return std::to_string(v); }) << '\n';
  os << "m_values = "
     << join(m_values, [](int v) { return std::to_string(v); }) << '\n';
  os << "d_cons_fractions = "
     << join(d_cons_fractions, [](double v) { return fmt(v); }) << '\n';
  os << "t_cons_values = "
     << join(t_cons_values, [](int v) { return std::to_string(v); }) << '\n';
  os << "importance = " << to_string(importance) << '\n';
  os << "trace_path = " << trace_path << '\n';
  os << "trace_block_size = " << trace_block_size << '\n';
  os << "stage1_loss = " << fmt(stage1_loss_min) << ',' << fmt(stage1_loss_max)
     << '\n';
  os << "d2d_loss = " << fmt(d2d_loss_min) << ',' << fmt(d2d_loss_max) << '\n';
  os << "p_norm = " << fmt(p_norm) << '\n';
  os << "trials = " << trials << '\n';
  os << "seed = " << seed << '\n';
  os << "out = " << out << '\n';
  os << "max_rounds = " << max_rounds << '\n';
  os << "greedy_clique = " << (greedy_clique ? 1 : 0) << '\n';
}

ExperimentSpec parse_experiment(std::istream& is) {
  ExperimentSpec spec;
  spec.d_cons_fractions.clear();
  spec.t_cons_values.clear();
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    auto int_list = [&](const std::string& v) {
      std::vector<int> out;
      if (v.empty()) return out;
      for (const auto& item : split(v, ','))
        out.push_back(static_cast<int>(parse_int(item, key)));
      return out;
    };
    auto double_list = [&](const std::string& v) {
      std::vector<double> out;
      if (v.empty()) return out;
      for (const auto& item : split(v, ','))
        out.push_back(parse_double(item, key));
      return out;
    };

    if (key == "problem") {
      if (value == "p1") spec.problem = Problem::CompletionTime;
      else if (value == "p2") spec.problem = Problem::Distortion;
      else throw ConfigError("unknown problem: " + value);
    } else if (key == "policies") {
      spec.policies.clear();
      for (const auto& name : split(value, ',')) {
        try {
          spec.policies.push_back(parse_policy_kind(name));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
      }
    } else if (key == "n_values") {
      spec.n_values = int_list(value);
    } else if (key == "m_values") {
      spec.m_values = int_list(value);
    } else if (key == "d_cons_fractions") {
      spec.d_cons_fractions = double_list(value);
    } else if (key == "t_cons_values") {
      spec.t_cons_values = int_list(value);
    } else if (key == "importance") {
      if (value == "gamma") spec.importance = ImportanceKind::Gamma;
      else if (value == "uniform") spec.importance = ImportanceKind::Uniform;
      else if (value == "trace") spec.importance = ImportanceKind::Trace;
      else throw ConfigError("unknown importance source: " + value);
    } else if (key == "trace_path") {
      spec.trace_path = value;
    } else if (key == "trace_block_size") {
      spec.trace_block_size = static_cast<int>(parse_int(value, key));
    } else if (key == "stage1_loss") {
      auto range = double_list(value);
      if (range.size() != 2) throw ConfigError("stage1_loss needs 'min,max'");
      spec.stage1_loss_min = range[0];
      spec.stage1_loss_max = range[1];
    } else if (key == "d2d_loss") {
      auto range = double_list(value);
      if (range.size() != 2) throw ConfigError("d2d_loss needs 'min,max'");
      spec.d2d_loss_min = range[0];
      spec.d2d_loss_max = range[1];
    } else if (key == "p_norm") {
      spec.p_norm = parse_double(value, key);
    } else if (key == "trials") {
      spec.trials = static_cast<int>(parse_int(value, key));
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "out") {
      spec.out = value;
    } else if (key == "max_rounds") {
      spec.max_rounds = static_cast<int>(parse_int(value, key));
    } else if (key == "greedy_clique") {
      spec.greedy_clique = parse_int(value, key) != 0;
    } else {
      throw ConfigError("unknown configuration key: " + key);
    }
  }
  return spec;
}

ExperimentSpec load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_experiment(in);
}

const CellResult* ResultTable::find(PolicyKind policy, int n, int m,
                                    double constraint) const {
  for (const auto& row : rows) {
    if (row.policy == policy && row.n_devices == n && row.m_packets == m &&
        row.constraint == constraint) {
      return &row;
    }
  }
  return nullptr;
}

std::string ResultTable::to_csv() const {
  std::ostringstream os;
  os << "schema,policy,N,M,constraint,metric_name,mean,stderr,trials,seed\n";
  for (const auto& row : rows) {
    os << kResultsSchema << ',' << to_string(row.policy) << ','
       << row.n_devices << ',' << row.m_packets << ','
       << fmt_short(row.constraint) << ',' << row.metric_name << ','
       << fmt_short(row.mean) << ',' << fmt_short(row.stderr_mean) << ','
       << row.trials << ',' << seed << '\n';
  }
  return os.str();
}

void write_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << table.to_csv();
}

namespace {

struct CellKey {
  int n, m;
  double constraint;
};

PacketUniverse make_universe(const ExperimentSpec& spec,
                             const ImportanceTrace* trace, int n_devices,
                             int m_packets, int trial, Rng& rng) {
  switch (spec.importance) {
    case ImportanceKind::Gamma: {
      std::vector<double> matrix(
          static_cast<std::size_t>(m_packets) * n_devices);
      for (auto& r : matrix) r = rng.gamma_variate(kGammaShape, kGammaScale);
      return PacketUniverse::from_matrix(m_packets, n_devices,
                                         std::move(matrix));
    }
    case ImportanceKind::Uniform:
      return PacketUniverse::broadcast(
          n_devices, std::vector<double>(m_packets, 1.0));
    case ImportanceKind::Trace: {
      const auto& block = trace->blocks[trial % trace->block_count()];
      return PacketUniverse::broadcast(n_devices, block);
    }
  }
  throw InternalError("unknown importance kind");
}

}  // namespace

ResultTable run_monte_carlo(const ExperimentSpec& spec) {
  spec.validate();

  ImportanceTrace trace;
  const bool use_trace = spec.importance == ImportanceKind::Trace;
  if (use_trace) trace = load_trace(spec.trace_path, spec.trace_block_size);

  const bool p1 = spec.problem == Problem::CompletionTime;
  std::vector<double> constraints;
  if (p1) {
    constraints = spec.d_cons_fractions;
  } else {
    for (int t : spec.t_cons_values) constraints.push_back(t);
  }
  const std::vector<int> m_values =
      use_trace ? std::vector<int>{spec.trace_block_size} : spec.m_values;
  const std::string metric = p1 ? "completion_time" : "distortion_pnorm";

  ResultTable table;
  table.seed = spec.seed;

  for (int n_devices : spec.n_values) {
    for (int m_packets : m_values) {
      // samples[constraint][policy][trial]; one scenario per trial shared by
      // every policy and constraint so comparisons are paired.
      std::vector<std::vector<std::vector<double>>> samples(
          constraints.size(),
          std::vector<std::vector<double>>(
              spec.policies.size(), std::vector<double>(spec.trials, 0.0)));

      auto run_trial = [&](int trial) {
        std::uint64_t scenario_seed =
            Rng::hash(spec.seed, static_cast<std::uint64_t>(n_devices),
                      static_cast<std::uint64_t>(m_packets),
                      static_cast<std::uint64_t>(trial));
        Rng rng(scenario_seed);
        PacketUniverse universe =
            make_universe(spec, &trace, n_devices, m_packets, trial, rng);
        ChannelModel channel = ChannelModel::uniform_random(
            n_devices, spec.stage1_loss_min, spec.stage1_loss_max,
            spec.d2d_loss_min, spec.d2d_loss_max, rng);
        ScenarioState state = apply_stage1(universe, channel, rng);
        std::uint64_t episode_seed = Rng::hash(scenario_seed, 0xe715);

        for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
          for (std::size_t pi = 0; pi < spec.policies.size(); ++pi) {
            PolicyConfig cfg;
            cfg.kind = spec.policies[pi];
            cfg.p_norm = spec.p_norm;
            cfg.solver = spec.greedy_clique ? CliqueSolver::Greedy
                                            : CliqueSolver::Exact;
            double sample;
            if (p1) {
              cfg.d_cons.resize(state.device_count());
              for (int n = 0; n < state.device_count(); ++n) {
                cfg.d_cons[n] =
                    constraints[ci] * state.universe.total_importance(n);
              }
              auto res = run_episode_p1(state, cfg, episode_seed,
                                        spec.max_rounds);
              sample = res.rounds_used;
            } else {
              cfg.t_cons = static_cast<int>(constraints[ci]);
              auto res = run_episode_p2(state, cfg, episode_seed);
              sample = res.distortion_pnorm(spec.p_norm);
            }
            samples[ci][pi][trial] = sample;
          }
        }
      };

      const unsigned n_threads = std::min<unsigned>(
          std::max(1u, std::thread::hardware_concurrency()),
          static_cast<unsigned>(spec.trials));
      if (n_threads <= 1) {
        for (int trial = 0; trial < spec.trials; ++trial) run_trial(trial);
      } else {
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < n_threads; ++w) {
          workers.emplace_back([&] {
            for (int trial = next.fetch_add(1); trial < spec.trials;
                 trial = next.fetch_add(1)) {
              run_trial(trial);
            }
          });
        }
        for (auto& w : workers) w.join();
      }

      for (std::size_t pi = 0; pi < spec.policies.size(); ++pi) {
        for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
          const auto& xs = samples[ci][pi];
          double mean = 0.0;
          for (double x : xs) mean += x;
          mean /= xs.size();
          double var = 0.0;
          for (double x : xs) var += (x - mean) * (x - mean);
          double stderr_mean =
              xs.size() > 1 ? std::sqrt(var / (xs.size() - 1.0) / xs.size())
                            : 0.0;
          CellResult row;
          row.policy = spec.policies[pi];
          row.n_devices = n_devices;
          row.m_packets = m_packets;
          row.constraint = constraints[ci];
          row.metric_name = metric;
          row.mean = mean;
          row.stderr_mean = stderr_mean;
          row.trials = spec.trials;
          row.samples = xs;
          table.rows.push_back(std::move(row));
        }
      }
    }
  }
  return table;
}

ExperimentSpec make_preset(const std::string& name, std::uint64_t seed,
                           int trials, const std::string& trace_path) {
  ExperimentSpec spec;
  spec.seed = seed;
  spec.trials = trials > 0 ? trials : 200;
  spec.d_cons_fractions.clear();
  spec.t_cons_values.clear();

  const std::vector<PolicyKind> p1_policies = {
      PolicyKind::P1, PolicyKind::ContentAwareLossUnawareP1,
      PolicyKind::LossAwareIdnc, PolicyKind::LossUnawareIdnc};
  const std::vector<PolicyKind> p2_policies = {
      PolicyKind::P2, PolicyKind::ContentAwareLossUnawareP2,
      PolicyKind::LossAwareIdnc, PolicyKind::LossUnawareIdnc};

  if (name == "fig2a" || name == "fig2b" || name == "fig2c") {
    spec.problem = Problem::CompletionTime;
    spec.policies = p1_policies;
    spec.d_cons_fractions = {0.2};
    if (name == "fig2a") {
      spec.n_values = {4, 6, 8, 10, 12, 14};
      spec.m_values = {10};
    } else if (name == "fig2b") {
      spec.n_values = {10};
      spec.m_values = {4, 6, 8, 10, 12, 14};
    } else {
      spec.n_values = {10};
      spec.m_values = {10};
      spec.d_cons_fractions = {0.0, 0.2, 0.4};
    }
  } else if (name == "fig3a" || name == "fig3b" || name == "fig3c") {
    spec.problem = Problem::Distortion;
    spec.policies = p2_policies;
    spec.t_cons_values = {3};
    if (name == "fig3a") {
      spec.n_values = {4, 6, 8, 10, 12, 14};
      spec.m_values = {10};
    } else if (name == "fig3b") {
      spec.n_values = {10};
      spec.m_values = {4, 6, 8, 10, 12, 14};
    } else {
      spec.n_values = {10};
      spec.m_values = {10};
      spec.t_cons_values = {1, 2, 3, 4, 5, 6};
    }
  } else if (name == "table1-style") {
    spec.problem = Problem::Distortion;
    spec.policies = p2_policies;
    spec.t_cons_values = {3};
    spec.n_values = {10};
    spec.importance = ImportanceKind::Trace;
    spec.trace_path = trace_path;
    spec.trace_block_size = 10;
    spec.stage1_loss_min = 0.3;
    spec.stage1_loss_max = 0.4;
    spec.d2d_loss_min = 0.0;
    spec.d2d_loss_max = 0.5;
    if (trace_path.empty()) {
      throw ConfigError("preset table1-style needs a trace file (--trace)");
    }
  } else {
    throw ConfigError("unknown preset: " + name);
  }
  return spec;
}

ResultTable run_preset(const std::string& name, std::uint64_t seed, int trials,
                       const std::string& out, const std::string& trace_path) {
  ExperimentSpec spec = make_preset(name, seed, trials, trace_path);
  spec.out = out;
  ResultTable table = run_monte_carlo(spec);
  write_csv(table, out);
  return table;
}

}  // namespace idnc
