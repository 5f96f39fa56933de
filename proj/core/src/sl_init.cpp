#include "lohe/sl_init.hpp"

#include <cmath>
#include <numbers>

#include "lohe/hermite.hpp"
#include "lohe/random.hpp"

namespace lohe {

SLSystem standing_wave_init(StandingFamily family, int k, std::size_t count, const Grid& grid,
                            double kappa) {
  if (count == 0) throw ConfigurationError("standing_wave_init: need at least one component");
  const WaveField u = hermite_function(HermiteSpec{k}, grid);
  SLSystem sys;
  sys.grid = grid;
  sys.kappa = kappa;
  sys.kinetic = 1.0;
  for (std::size_t j = 0; j < count; ++j) {
    CVector f = u.values;
    if (family == StandingFamily::Bipolar && j == 0)
      for (auto& z : f) z = -z;
    sys.fields.push_back(std::move(f));
    sys.potentials.push_back(harmonic_potential(grid, 1.0));
  }
  return sys;
}

void perturb(SLSystem& sys, double delta, std::uint64_t seed) {
  Rng rng(seed);
  for (auto& f : sys.fields) {
    // A unit-mass gaussian bump at a random position with a random phase.
    std::array<double, 2> c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const auto bump = gaussian_init({c}, {1.0}, sys.grid)[0];
    const cplx phase = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += delta * phase * bump[i];
    normalize_mass(sys.grid, f);
  }
}

std::vector<CVector> gaussian_init(const std::vector<std::array<double, 2>>& centers,
                                   const std::vector<double>& widths, const Grid& grid) {
  if (widths.size() != centers.size() && widths.size() != 1)
    throw ConfigurationError("gaussian_init: need one width or one per center");
  std::vector<CVector> out;
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const double a = widths.size() == 1 ? widths[0] : widths[j];
    if (!(a > 0.0)) throw ConfigurationError("gaussian_init: widths must be > 0");
    for (std::size_t k = 0; k < grid.dim(); ++k)
      if (centers[j][k] < grid.axis(k).a || centers[j][k] > grid.axis(k).b)
        throw ConfigurationError("gaussian_init: center outside the domain");
    CVector f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double r2 = 0.0;
      for (std::size_t k = 0; k < grid.dim(); ++k) {
        const double d = grid.coord(i, k) - centers[j][k];
        r2 += d * d;
      }
      f[i] = std::sqrt(a / std::numbers::pi) * std::exp(-a * r2);
    }
    normalize_mass(grid, f);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace lohe
