// Periodic tensor grids in one or two dimensions and the discrete inner
// product <f,g>_dx = dx * sum f conj(g) used by the scheme.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "lohe/types.hpp"

namespace lohe {

struct Axis {
  double a = -12.0;
  double b = 12.0;
  std::size_t M = 256;  // even, >= 8; nodes x_l = a + l dx, l = 0..M-1

  double length() const noexcept { return b - a; }
  double dx() const noexcept { return (b - a) / double(M); }
  double node(std::size_t l) const noexcept { return a + double(l) * dx(); }
  // Angular wavenumber of FFT output slot q, mode p in {-M/2..M/2-1}:
  // mu_p = 2 pi p / (b - a).
  double wavenumber(std::size_t q) const noexcept;
  void validate() const;
};

class Grid {
 public:
  Grid() = default;
  explicit Grid(Axis x);
  Grid(Axis x, Axis y);

  std::size_t dim() const noexcept { return axes_.size(); }
  const Axis& axis(std::size_t k) const { return axes_.at(k); }
  const std::vector<Axis>& axes() const noexcept { return axes_; }
  std::size_t size() const noexcept { return size_; }
  // Product of the per-axis spacings (quadrature weight).
  double cell() const noexcept { return cell_; }

  // Coordinate of node index `flat` along axis k; 2D layout is row-major with
  // axis 0 slowest.
  double coord(std::size_t flat, std::size_t k) const;
  // |x|^2 at every node.
  std::vector<double> radius_squared() const;

  bool operator==(const Grid& other) const;

 private:
  std::vector<Axis> axes_;
  std::size_t size_ = 0;
  double cell_ = 0.0;
};

// One SL component on a grid.
struct WaveField {
  Grid grid;
  CVector values;

  WaveField() = default;
  WaveField(Grid g, CVector v);
};

cplx discrete_inner(const Grid& g, std::span<const cplx> f, std::span<const cplx> h);
double discrete_mass(const Grid& g, std::span<const cplx> f);
double discrete_distance(const Grid& g, std::span<const cplx> f, std::span<const cplx> h);
// Scales f to unit discrete mass.
void normalize_mass(const Grid& g, std::span<cplx> f);

}  // namespace lohe
