#include "lohe/grid.hpp"

#include <cmath>
#include <numbers>

namespace lohe {

double Axis::wavenumber(std::size_t q) const noexcept {
  const double p = q < M / 2 ? double(q) : double(q) - double(M);
  return 2.0 * std::numbers::pi * p / (b - a);
}

void Axis::validate() const {
  if (!(b > a)) throw ConfigurationError("grid: axis needs b > a");
  if (M < 8 || M % 2 != 0) throw ConfigurationError("grid: M must be even and >= 8");
}

Grid::Grid(Axis x) : axes_{x} {
  x.validate();
  size_ = x.M;
  cell_ = x.dx();
}

Grid::Grid(Axis x, Axis y) : axes_{x, y} {
  x.validate();
  y.validate();
  size_ = x.M * y.M;
  cell_ = x.dx() * y.dx();
}

double Grid::coord(std::size_t flat, std::size_t k) const {
  if (dim() == 1) return axes_[0].node(flat);
  const std::size_t m1 = axes_[1].M;
  return k == 0 ? axes_[0].node(flat / m1) : axes_[1].node(flat % m1);
}

std::vector<double> Grid::radius_squared() const {
  std::vector<double> r(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim(); ++k) {
      const double x = coord(i, k);
      s += x * x;
    }
    r[i] = s;
  }
  return r;
}

bool Grid::operator==(const Grid& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t k = 0; k < dim(); ++k)
    if (axes_[k].a != other.axes_[k].a || axes_[k].b != other.axes_[k].b ||
        axes_[k].M != other.axes_[k].M)
      return false;
  return true;
}

WaveField::WaveField(Grid g, CVector v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) throw DimensionError("WaveField: value count != grid size");
}

cplx discrete_inner(const Grid& g, std::span<const cplx> f, std::span<const cplx> h) {
  if (f.size() != g.size() || h.size() != g.size())
    throw DimensionError("discrete_inner: field size does not match grid");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * std::conj(h[i]);
  return g.cell() * acc;
}

double discrete_mass(const Grid& g, std::span<const cplx> f) {
  if (f.size() != g.size()) throw DimensionError("discrete_mass: field size does not match grid");
  double acc = 0.0;
  for (const auto& z : f) acc += std::norm(z);
  return g.cell() * acc;
}

double discrete_distance(const Grid& g, std::span<const cplx> f, std::span<const cplx> h) {
  if (f.size() != g.size() || h.size() != g.size())
    throw DimensionError("discrete_distance: field size does not match grid");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += std::norm(f[i] - h[i]);
  return std::sqrt(g.cell() * acc);
}

void normalize_mass(const Grid& g, std::span<cplx> f) {
  const double m = discrete_mass(g, f);
  if (!(m > 0.0)) throw ConfigurationError("normalize_mass: field has zero mass");
  const double s = 1.0 / std::sqrt(m);
  for (auto& z : f) z *= s;
}

}  // namespace lohe
