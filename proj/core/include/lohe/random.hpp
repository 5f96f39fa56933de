// Seeded random numbers with a portable bit-to-float mapping, so that
// trajectories are reproducible across standard library implementations.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "lohe/types.hpp"

namespace lohe {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0,1).
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; avoids std::normal_distribution whose output is unspecified.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Real and imaginary parts uniform on [-1,1].
  cplx complex_uniform() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
  cplx complex_normal() { return {normal(), normal()}; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Unit-norm complex (or real) vector with gaussian entries.
inline CVector random_unit_vector(Rng& rng, std::size_t n, bool real = false) {
  CVector v(n);
  double s = 0.0;
  for (auto& z : v) {
    z = real ? cplx(rng.normal(), 0.0) : rng.complex_normal();
    s += std::norm(z);
  }
  s = std::sqrt(s);
  for (auto& z : v) z /= s;
  return v;
}

}  // namespace lohe
