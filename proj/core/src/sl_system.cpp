#include "lohe/sl_system.hpp"

#include <cmath>
#include <string>

#include "lohe/fft.hpp"

namespace lohe {

bool SLSystem::all_to_all() const {
  if (!adjacency.size()) return true;
  return (adjacency.array() == 1.0).all();
}

void SLSystem::validate() const {
  const std::size_t n = fields.size();
  if (n == 0) throw ConfigurationError("SL system: no components");
  for (const auto& f : fields)
    if (f.size() != grid.size()) throw DimensionError("SL system: field size != grid size");
  if (!potentials.empty() && potentials.size() != n)
    throw DimensionError("SL system: need one potential per component");
  for (const auto& v : potentials)
    if (!v.empty() && v.size() != grid.size())
      throw DimensionError("SL system: potential size != grid size");
  const auto nn = Eigen::Index(n);
  if (beta.size() && (beta.rows() != nn || beta.cols() != nn))
    throw DimensionError("SL system: beta must be N x N");
  if (adjacency.size() && (adjacency.rows() != nn || adjacency.cols() != nn))
    throw DimensionError("SL system: adjacency must be N x N");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ConfigurationError("SL system: kappa must be finite and >= 0");
  if (!(kinetic > 0.0)) throw ConfigurationError("SL system: kinetic coefficient must be > 0");
}

std::vector<double> harmonic_potential(const Grid& g, double scale, double shift) {
  auto v = g.radius_squared();
  for (auto& x : v) x = scale * x + shift;
  return v;
}

double component_energy(const SLSystem& sys, std::size_t j) {
  SpectralTransform fft(sys.grid);
  const auto& f = sys.fields.at(j);
  double e = sys.kinetic * fft.gradient_energy(f);
  if (!sys.potentials.empty() && !sys.potentials[j].empty()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += sys.potentials[j][i] * std::norm(f[i]);
    e += sys.grid.cell() * acc;
  }
  return e;
}

double energy(const SLSystem& sys) {
  sys.validate();
  double e = 0.0;
  for (std::size_t j = 0; j < sys.size(); ++j) e += component_energy(sys, j);
  if (sys.beta.size()) {
    double acc = 0.0;
    for (std::size_t j = 0; j < sys.size(); ++j)
      for (std::size_t k = 0; k < sys.size(); ++k) {
        const double bjk = sys.b(j, k);
        if (bjk == 0.0) continue;
        double s = 0.0;
        for (std::size_t i = 0; i < sys.grid.size(); ++i)
          s += std::norm(sys.fields[k][i]) * std::norm(sys.fields[j][i]);
        acc += 0.5 * bjk * s;
      }
    e += sys.grid.cell() * acc;
  }
  return e;
}

double center_of_mass(const Grid& g, std::span<const cplx> f, std::size_t k) {
  if (f.size() != g.size()) throw DimensionError("center_of_mass: size mismatch");
  if (k >= g.dim()) throw DimensionError("center_of_mass: axis out of range");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += g.coord(i, k) * std::norm(f[i]);
  return g.cell() * acc;
}

}  // namespace lohe
