#include "lohe/hermite.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

namespace lohe {

double hermite_polynomial(int k, double x) {
  if (k < 0) throw std::invalid_argument("hermite_polynomial: k must be >= 0");
  double h0 = 1.0;
  if (k == 0) return h0;
  double h1 = 2.0 * x;
  for (int n = 1; n < k; ++n) {
    const double h2 = 2.0 * x * h1 - 2.0 * n * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double hermite_function_value(int k, double x) {
  if (k < 0) throw std::invalid_argument("hermite_function: k must be >= 0");
  const double u0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (k == 0) return u0;
  double a = u0;
  double b = std::sqrt(2.0) * x * u0;
  for (int n = 1; n < k; ++n) {
    const double c = std::sqrt(2.0 / (n + 1)) * x * b - std::sqrt(double(n) / (n + 1)) * a;
    a = b;
    b = c;
  }
  return b;
}

WaveField hermite_function(const HermiteSpec& spec, const Grid& grid, std::ostream* warn) {
  if (grid.dim() != 1) throw ConfigurationError("hermite_function: 1D grids only");
  CVector v(grid.size());
  for (std::size_t l = 0; l < grid.size(); ++l)
    v[l] = hermite_function_value(spec.k, grid.axis(0).node(l));
  const double edge = std::max(std::abs(hermite_function_value(spec.k, grid.axis(0).a)),
                               std::abs(hermite_function_value(spec.k, grid.axis(0).b)));
  if (edge >= 1e-12) {
    std::ostream& os = warn ? *warn : std::clog;
    os << "warning: Hermite function u_" << spec.k << " is truncated by the domain (|u| = "
       << edge << " at the boundary)\n";
  }
  return WaveField(grid, std::move(v));
}

}  // namespace lohe
