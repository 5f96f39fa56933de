// Hermite polynomials and the orthonormal eigenfunctions
//   u_k(x) = (sqrt(pi) 2^k k!)^{-1/2} e^{-x^2/2} H_k(x),  -u'' + x^2 u = (2k+1) u.

#pragma once

#include <iosfwd>
#include <vector>

#include "lohe/grid.hpp"

namespace lohe {

struct HermiteSpec {
  int k = 0;
  double eigenvalue() const noexcept { return 2.0 * k + 1.0; }
};

// Physicists' H_k(x) by H_{k+1} = 2x H_k - 2k H_{k-1}.
double hermite_polynomial(int k, double x);

// u_k(x) via the normalized three-term recurrence (stable for large k).
double hermite_function_value(int k, double x);

// u_k on a 1D grid. If |u_k| at the domain ends is >= 1e-12, a truncation
// warning is written to `warn` (std::clog when null).
WaveField hermite_function(const HermiteSpec& spec, const Grid& grid, std::ostream* warn = nullptr);

}  // namespace lohe
