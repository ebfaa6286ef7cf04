#include "idnc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "idnc/errors.hpp"
#include "idnc/rng.hpp"

namespace idnc {

double EpisodeResult::distortion_pnorm(double p) const {
  double sum = 0.0;
  for (double d : final_distortion) sum += std::pow(d, p);
  return std::pow(sum, 1.0 / p);
}

namespace {

std::size_t total_lacking(const ScenarioState& state) {
  std::size_t sum = 0;
  for (const auto& dev : state.devices) sum += dev.lacks.size();
  return sum;
}

std::vector<double> distortions(const ScenarioState& state) {
  std::vector<double> d;
  d.reserve(state.devices.size());
  for (const auto& dev : state.devices) d.push_back(dev.distortion);
  return d;
}

}  // namespace

TransmissionRecord run_round(ScenarioState& state,
                             std::vector<WantsFamily>* families,
                             const CodeSelection& selection,
                             std::uint64_t episode_seed, int round) {
  const std::size_t lacking_before = total_lacking(state);

  TransmissionRecord rec;
  rec.round = round;
  rec.transmitter = selection.transmitter;
  rec.coded = selection.coded_packets;
  rec.outcomes.resize(state.devices.size());

  for (int n = 0; n < state.device_count(); ++n) {
    if (n == selection.transmitter) continue;
    double u = Rng::stream_uniform(episode_seed, static_cast<std::uint64_t>(round),
                                   static_cast<std::uint64_t>(n));
    if (u < state.channel.loss(selection.transmitter, n)) {
      rec.outcomes[n].outcome = RoundOutcome::Lost;
      continue;
    }
    rec.outcomes[n].outcome = RoundOutcome::Received;
    DeviceState& dev = state.devices[n];
    auto decoded = xor_decode(dev, selection.coded_packets);
    if (!decoded) continue;
    rec.outcomes[n].decoded = decoded;

    if (families && !(*families)[n].satisfied()) {
      (*families)[n] = advance_on_decode(std::move((*families)[n]), *decoded);
    }
    dev.has.insert(*decoded);
    dev.lacks.erase(*decoded);
    if (dev.lacks.empty()) {
      dev.distortion = 0.0;
    } else {
      dev.distortion -= state.universe.importance_at(*decoded, n);
      double exact = compute_distortion(state.universe, dev.has, n);
      require(std::abs(dev.distortion - exact) <=
                  1e-6 * std::max(1.0, exact),
              "incremental distortion drifted from the recomputed value");
    }
  }

  require(total_lacking(state) <= lacking_before, "Lacks grew during a round");
  return rec;
}

EpisodeResult run_episode_p1(ScenarioState state, const PolicyConfig& policy,
                             std::uint64_t seed, int max_rounds) {
  if (policy.kind == PolicyKind::P2 ||
      policy.kind == PolicyKind::ContentAwareLossUnawareP2) {
    throw std::invalid_argument("policy kind unsuitable for a P1 episode");
  }
  const int n_devices = state.device_count();
  if (static_cast<int>(policy.d_cons.size()) != n_devices) {
    throw std::invalid_argument("P1 episodes need per-device d_cons");
  }
  if (max_rounds < 0) throw std::invalid_argument("max_rounds must be >= 0");

  std::vector<WantsFamily> families;
  families.reserve(n_devices);
  int t_sum = 0;
  for (int n = 0; n < n_devices; ++n) {
    families.push_back(enumerate_wants_family(state, n, policy.d_cons[n]));
    t_sum += families.back().completion_time;
  }
  if (max_rounds == 0) max_rounds = 10 * t_sum;

  EpisodeResult result;
  result.seed = seed;

  // Satisfaction is tracked through the families for every policy kind so the
  // stopping rule matches the admissibility decision made at enumeration.
  auto all_satisfied = [&] {
    for (const auto& fam : families) {
      if (!fam.satisfied()) return false;
    }
    return true;
  };

  int round = 0;
  while (!all_satisfied()) {
    if (round >= max_rounds) {
      result.terminated_normally = false;
      break;
    }
    ++round;
    auto sel = propose_code(policy, state, &families);
    require(sel.has_value(), "unsatisfied devices but nothing to propose");
    auto rec = run_round(state, &families, *sel, seed, round);
    bool any_target_decoded = false;
    for (const auto& [n, m] : sel->targets) {
      if (rec.outcomes[n].decoded) any_target_decoded = true;
    }
    if (any_target_decoded) ++result.successful_rounds;
    result.records.push_back(std::move(rec));
  }

  result.rounds_used = round;
  result.final_distortion = distortions(state);
  return result;
}

EpisodeResult run_episode_p2(ScenarioState state, const PolicyConfig& policy,
                             std::uint64_t seed) {
  if (is_p1_family(policy.kind)) {
    throw std::invalid_argument("policy kind unsuitable for a P2 episode");
  }
  if (policy.t_cons < 0) throw std::invalid_argument("t_cons must be >= 0");

  EpisodeResult result;
  result.seed = seed;

  for (int round = 1; round <= policy.t_cons; ++round) {
    auto sel = propose_code(policy, state, nullptr);
    if (!sel) break;  // nothing lacking anywhere
    auto rec = run_round(state, nullptr, *sel, seed, round);
    bool any_target_decoded = false;
    for (const auto& [n, m] : sel->targets) {
      if (rec.outcomes[n].decoded) any_target_decoded = true;
    }
    if (any_target_decoded) ++result.successful_rounds;
    result.records.push_back(std::move(rec));
    result.rounds_used = round;
  }

  result.final_distortion = distortions(state);
  return result;
}

}  // namespace idnc
