#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace minsos {

// Seeded generator with distribution code written out explicitly so that a
// seed produces the same stream on every standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer in [lo, hi].
  long integer(long lo, long hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  std::complex<double> unit_complex() {
    const double phi = uniform(0.0, 2.0 * M_PI);
    return {std::cos(phi), std::sin(phi)};
  }

  std::complex<double> complex_normal() { return {normal(), normal()}; }

  // Derives an independent stream for a sub-task.
  Rng fork(uint64_t salt) { return Rng(engine_() ^ (salt * 0x9E3779B97F4A7C15ULL)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace minsos
