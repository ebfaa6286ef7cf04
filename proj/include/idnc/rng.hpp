#pragma once

#include <cmath>
#include <cstdint>

namespace idnc {

// Seedable generator built on the splitmix64 scrambler. Substreams are derived
// by hashing (seed, path components), so per-trial and per-round draws can be
// replayed without tracking how much of any other stream was consumed.
// Recorded in results metadata as "splitmix64".
class Rng {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t hash(std::uint64_t a, std::uint64_t b) {
    return scramble(a + kGamma * (b + 0x6a09e667f3bcc909ULL));
  }
  static std::uint64_t hash(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return hash(hash(a, b), c);
  }
  static std::uint64_t hash(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                            std::uint64_t d) {
    return hash(hash(a, b, c), d);
  }

  std::uint64_t next() {
    state_ += kGamma;
    return scramble(state_);
  }

  static double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;  // [0,1)
  }

  double uniform() { return to_unit(next()); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive range; modulo bias is irrelevant at the span sizes used here.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Stateless counter-based draw; used for per-round channel losses so that
  // paired policies see identical erasure patterns.
  static double stream_uniform(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b) {
    return to_unit(hash(seed, a, b));
  }

  double normal() {
    double u1 = 1.0 - uniform();  // (0,1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  // Marsaglia-Tsang; the shape<1 case goes through the boost trick.
  double gamma_variate(double shape, double scale) {
    if (shape < 1.0) {
      double u = 1.0 - uniform();
      return gamma_variate(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = 1.0 - uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return d * v * scale;
      }
    }
  }

  Rng split(std::uint64_t key) const { return Rng(hash(state_, key)); }

 private:
  std::uint64_t state_;
};

}  // namespace idnc
