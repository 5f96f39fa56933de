#include "lohe/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace lohe {

namespace {

// FFTW's planner is not thread-safe; executing distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Out-of-place blocked transpose of a rows x cols row-major array.
void transpose(const cplx* in, cplx* out, std::size_t rows, std::size_t cols) {
  constexpr std::size_t kBlock = 32;
  for (std::size_t r0 = 0; r0 < rows; r0 += kBlock)
    for (std::size_t c0 = 0; c0 < cols; c0 += kBlock) {
      const std::size_t r1 = std::min(rows, r0 + kBlock), c1 = std::min(cols, c0 + kBlock);
      for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c) out[c * rows + r] = in[r * cols + c];
    }
}

}  // namespace

struct SpectralTransform::Impl {
  fftw_complex* buf = nullptr;
  fftw_complex* aux = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  // 2D only: batched row transforms over (m0 rows of m1) and (m1 rows of m0).
  fftw_plan rows_fwd = nullptr, rows_bwd = nullptr, cols_fwd = nullptr, cols_bwd = nullptr;
  std::size_t n = 0, m0 = 0, m1 = 0;

  explicit Impl(const Grid& g) : n(g.size()) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf = fftw_alloc_complex(n);
    if (!buf) throw std::bad_alloc();
    if (g.dim() == 1) {
      const int m = int(g.axis(0).M);
      fwd = fftw_plan_dft_1d(m, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_1d(m, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      m0 = g.axis(0).M;
      m1 = g.axis(1).M;
      aux = fftw_alloc_complex(n);
      if (!aux) throw std::bad_alloc();
      fwd = fftw_plan_dft_2d(int(m0), int(m1), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_2d(int(m0), int(m1), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
      auto batch = [](fftw_complex* p, std::size_t count, std::size_t len, int sign) {
        const int l = int(len);
        return fftw_plan_many_dft(1, &l, int(count), p, nullptr, 1, l, p, nullptr, 1, l, sign,
                                  FFTW_ESTIMATE);
      };
      rows_fwd = batch(buf, m0, m1, FFTW_FORWARD);
      rows_bwd = batch(buf, m0, m1, FFTW_BACKWARD);
      cols_fwd = batch(aux, m1, m0, FFTW_FORWARD);
      cols_bwd = batch(aux, m1, m0, FFTW_BACKWARD);
      if (!rows_fwd || !rows_bwd || !cols_fwd || !cols_bwd)
        throw std::runtime_error("SpectralTransform: FFTW planning failed");
    }
    if (!fwd || !bwd) throw std::runtime_error("SpectralTransform: FFTW planning failed");
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    for (fftw_plan p : {fwd, bwd, rows_fwd, rows_bwd, cols_fwd, cols_bwd})
      if (p) fftw_destroy_plan(p);
    if (buf) fftw_free(buf);
    if (aux) fftw_free(aux);
  }

  cplx* data() { return reinterpret_cast<cplx*>(buf); }
  cplx* aux_data() { return reinterpret_cast<cplx*>(aux); }
};

SpectralTransform::SpectralTransform(const Grid& grid) : grid_(grid) {
  if (grid_.dim() < 1 || grid_.dim() > 2)
    throw ConfigurationError("SpectralTransform: only 1D and 2D grids are supported");
  mu2_.resize(grid_.size());
  if (grid_.dim() == 1) {
    for (std::size_t q = 0; q < grid_.size(); ++q) {
      const double mu = grid_.axis(0).wavenumber(q);
      mu2_[q] = mu * mu;
    }
  } else {
    const std::size_t m0 = grid_.axis(0).M, m1 = grid_.axis(1).M;
    for (std::size_t q0 = 0; q0 < m0; ++q0) {
      const double k0 = grid_.axis(0).wavenumber(q0);
      for (std::size_t q1 = 0; q1 < m1; ++q1) {
        const double k1 = grid_.axis(1).wavenumber(q1);
        mu2_[q0 * m1 + q1] = k0 * k0 + k1 * k1;
      }
    }
  }
  impl_ = std::make_unique<Impl>(grid_);
}

SpectralTransform::~SpectralTransform() = default;

void SpectralTransform::forward(std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t n = size();
  if (in.size() != n || out.size() != n) throw DimensionError("forward: size mismatch");
  std::copy(in.begin(), in.end(), impl_->data());
  fftw_execute(impl_->fwd);
  std::copy_n(impl_->data(), n, out.begin());
}

void SpectralTransform::backward(std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t n = size();
  if (in.size() != n || out.size() != n) throw DimensionError("backward: size mismatch");
  std::copy(in.begin(), in.end(), impl_->data());
  fftw_execute(impl_->bwd);
  const double s = 1.0 / double(n);
  const cplx* d = impl_->data();
  for (std::size_t i = 0; i < n; ++i) out[i] = d[i] * s;
}

std::vector<cplx> SpectralTransform::prepare_multiplier(std::span<const cplx> multiplier) const {
  const std::size_t n = size();
  if (multiplier.size() != n) throw DimensionError("prepare_multiplier: size mismatch");
  const double s = 1.0 / double(n);
  std::vector<cplx> out(n);
  if (grid_.dim() == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = multiplier[i] * s;
  } else {
    transpose(multiplier.data(), out.data(), impl_->m0, impl_->m1);
    for (auto& z : out) z *= s;
  }
  return out;
}

void SpectralTransform::apply_prepared(std::span<cplx> f, std::span<const cplx> prepared) {
  const std::size_t n = size();
  if (f.size() != n || prepared.size() != n) throw DimensionError("apply_prepared: size mismatch");
  cplx* d = impl_->data();
  std::copy(f.begin(), f.end(), d);
  if (grid_.dim() == 1) {
    fftw_execute(impl_->fwd);
    for (std::size_t i = 0; i < n; ++i) d[i] *= prepared[i];
    fftw_execute(impl_->bwd);
  } else {
    // Row transforms, transpose, row transforms: the spectrum lives in
    // transposed order, where the prepared multiplier was laid out.
    cplx* a = impl_->aux_data();
    fftw_execute(impl_->rows_fwd);
    transpose(d, a, impl_->m0, impl_->m1);
    fftw_execute(impl_->cols_fwd);
    for (std::size_t i = 0; i < n; ++i) a[i] *= prepared[i];
    fftw_execute(impl_->cols_bwd);
    transpose(a, d, impl_->m1, impl_->m0);
    fftw_execute(impl_->rows_bwd);
  }
  std::copy_n(d, n, f.begin());
}

void SpectralTransform::apply_multiplier(std::span<cplx> f, std::span<const cplx> multiplier) {
  apply_prepared(f, prepare_multiplier(multiplier));
}

void SpectralTransform::derivative(std::span<const cplx> f, std::size_t k, std::span<cplx> out) {
  if (k >= grid_.dim()) throw DimensionError("derivative: axis out of range");
  const std::size_t n = size();
  if (f.size() != n || out.size() != n) throw DimensionError("derivative: size mismatch");
  cplx* d = impl_->data();
  std::copy(f.begin(), f.end(), d);
  fftw_execute(impl_->fwd);
  const double s = 1.0 / double(n);
  const std::size_t m1 = grid_.dim() == 2 ? grid_.axis(1).M : 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t q = grid_.dim() == 1 ? i : (k == 0 ? i / m1 : i % m1);
    const Axis& ax = grid_.axis(k);
    const double mu = q == ax.M / 2 ? 0.0 : ax.wavenumber(q);
    d[i] *= cplx(0.0, mu) * s;
  }
  fftw_execute(impl_->bwd);
  std::copy_n(d, n, out.begin());
}

void SpectralTransform::laplacian(std::span<const cplx> f, std::span<cplx> out) {
  const std::size_t n = size();
  if (f.size() != n || out.size() != n) throw DimensionError("laplacian: size mismatch");
  cplx* d = impl_->data();
  std::copy(f.begin(), f.end(), d);
  fftw_execute(impl_->fwd);
  const double s = 1.0 / double(n);
  for (std::size_t i = 0; i < n; ++i) d[i] *= -mu2_[i] * s;
  fftw_execute(impl_->bwd);
  std::copy_n(d, n, out.begin());
}

double SpectralTransform::gradient_energy(std::span<const cplx> f) {
  const std::size_t n = size();
  if (f.size() != n) throw DimensionError("gradient_energy: size mismatch");
  cplx* d = impl_->data();
  std::copy(f.begin(), f.end(), d);
  fftw_execute(impl_->fwd);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += mu2_[i] * std::norm(d[i]);
  return grid_.cell() * acc / double(n);
}

}  // namespace lohe
