// FFTW-backed transforms on a Grid. Forward is unnormalized; backward carries
// 1/M per axis, so backward(forward(f)) == f. Plans use FFTW_ESTIMATE so the
// arithmetic (and hence every trajectory) is reproducible run to run.

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lohe/grid.hpp"

namespace lohe {

class SpectralTransform {
 public:
  explicit SpectralTransform(const Grid& grid);
  ~SpectralTransform();
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }

  // |mu|^2 for every FFT slot (sum over axes in 2D).
  const std::vector<double>& mu_squared() const noexcept { return mu2_; }

  void forward(std::span<const cplx> in, std::span<cplx> out);
  void backward(std::span<const cplx> in, std::span<cplx> out);

  // f <- IFFT(multiplier .* FFT(f)), multiplier in FFT slot order.
  void apply_multiplier(std::span<cplx> f, std::span<const cplx> multiplier);
  // Repeated application: prepare once (internal spectral order with the 1/size
  // factor folded in), then apply_prepared per field.
  std::vector<cplx> prepare_multiplier(std::span<const cplx> multiplier) const;
  void apply_prepared(std::span<cplx> f, std::span<const cplx> prepared);

  // Partial derivative along axis k, spectrally (Nyquist mode zeroed).
  void derivative(std::span<const cplx> f, std::size_t k, std::span<cplx> out);
  // Laplacian, spectrally.
  void laplacian(std::span<const cplx> f, std::span<cplx> out);
  // Discrete integral of |grad f|^2 via Parseval: cell * (1/size) * sum |mu|^2 |f_hat|^2.
  double gradient_energy(std::span<const cplx> f);

 private:
  struct Impl;
  Grid grid_;
  std::vector<double> mu2_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lohe
