#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "spar/numerics/special.hpp"

namespace spar::num {

// Deterministic random source. std::mt19937_64 is fully specified by the
// standard and the variate transforms below avoid the implementation-defined
// std distributions, so streams are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform on (0,1); never returns 0 or 1
  double uniform() {
    const std::uint64_t u = eng_() >> 11;  // 53 bits
    return (static_cast<double>(u) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double m = std::sqrt(-2.0 * std::log(u1));
    spare_ = m * std::sin(2.0 * pi * u2);
    have_spare_ = true;
    return m * std::cos(2.0 * pi * u2);
  }

  // Marsaglia-Tsang gamma(shape a, scale 1)
  double gamma(double a) {
    if (a < 1.0) {
      const double u = uniform();
      return gamma(a + 1.0) * std::pow(u, 1.0 / a);
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_squared(double nu) { return 2.0 * gamma(0.5 * nu); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spar::num
