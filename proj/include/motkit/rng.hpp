#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "motkit/errors.hpp"

namespace motkit {

// Seeded RNG with pinned draw algorithms. The mt19937_64 engine sequence is
// fully specified by the standard, but std:: distributions are not, so the
// distributions are implemented here; identical seeds give identical draws on
// every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) {
      throw DomainError("uniform_int needs a positive bound");
    }
    // Multiply-shift; the bias is < 2^-64 per draw and identical everywhere.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Marsaglia polar method, one value per call (no cached spare, so the draw
  // count per call is a pure function of the accept/reject sequence).
  double normal(double mean = 0.0, double stddev = 1.0) {
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return mean + stddev * (u * std::sqrt(-2.0 * std::log(s) / s));
  }

  // Knuth's product method; fine for the small rates used here.
  std::uint64_t poisson(double lambda) {
    if (lambda < 0.0) {
      throw DomainError("poisson rate must be non-negative");
    }
    if (lambda == 0.0) {
      return 0;
    }
    const double limit = std::exp(-lambda);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace motkit
