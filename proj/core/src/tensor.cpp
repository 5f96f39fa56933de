#include "lohe/tensor.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "lohe/random.hpp"

namespace lohe {

namespace {

void require_same_shape(const TensorShape& a, const TensorShape& b, const char* what) {
  if (!(a == b)) throw DimensionError(std::string(what) + ": tensor shapes differ");
}

}  // namespace

TensorShape::TensorShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("TensorShape: rank must be at least 1");
  strides_.assign(dims_.size(), 1);
  size_ = 1;
  for (std::size_t k = dims_.size(); k-- > 0;) {
    if (dims_[k] == 0) throw DimensionError("TensorShape: every dimension must be positive");
    strides_[k] = size_;
    size_ *= dims_[k];
  }
}

TensorShape::TensorShape(std::initializer_list<std::size_t> dims)
    : TensorShape(std::vector<std::size_t>(dims)) {}

std::size_t TensorShape::flat_index(std::span<const std::size_t> multi) const {
  if (multi.size() != dims_.size()) throw DimensionError("flat_index: wrong number of indices");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (multi[k] >= dims_[k]) throw std::out_of_range("flat_index: index out of range");
    flat += strides_[k] * multi[k];
  }
  return flat;
}

std::vector<std::size_t> TensorShape::multi_index(std::size_t flat) const {
  if (flat >= size_) throw std::out_of_range("multi_index: flat index out of range");
  std::vector<std::size_t> multi(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    multi[k] = flat / strides_[k];
    flat %= strides_[k];
  }
  return multi;
}

TensorShape TensorShape::concat(const TensorShape& other) const {
  std::vector<std::size_t> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return TensorShape(std::move(dims));
}

CTensor::CTensor(TensorShape shape, CVector entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
  if (entries_.size() != shape_.size())
    throw DimensionError("CTensor: entry count does not match shape");
}

CTensor CTensor::zeros(const TensorShape& shape) { return CTensor(shape, CVector(shape.size())); }

CTensor CTensor::conj() const {
  CTensor out = *this;
  for (auto& z : out.entries_) z = std::conj(z);
  return out;
}

double CTensor::norm() const { return frobenius_norm(*this); }

CTensor& CTensor::operator+=(const CTensor& other) {
  require_same_shape(shape_, other.shape_, "operator+=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

CTensor& CTensor::operator-=(const CTensor& other) {
  require_same_shape(shape_, other.shape_, "operator-=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

CTensor& CTensor::operator*=(cplx s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

CTensor operator+(CTensor a, const CTensor& b) { return a += b; }
CTensor operator-(CTensor a, const CTensor& b) { return a -= b; }
CTensor operator*(cplx s, CTensor a) { return a *= s; }

BlockSkewTensor::BlockSkewTensor(TensorShape base_shape, CVector entries)
    : base_(std::move(base_shape)), entries_(std::move(entries)) {
  if (entries_.size() != base_.size() * base_.size())
    throw DimensionError("BlockSkewTensor: entry count must be (base size)^2");
}

BlockSkewTensor BlockSkewTensor::zero(const TensorShape& base_shape) {
  return BlockSkewTensor(base_shape, CVector(base_shape.size() * base_shape.size()));
}

double BlockSkewTensor::skew_defect() const {
  const std::size_t n = base_.size();
  double worst = 0.0;
  for (std::size_t a0 = 0; a0 < n; ++a0)
    for (std::size_t a1 = 0; a1 < n; ++a1)
      worst = std::max(worst, std::abs(std::conj((*this)(a0, a1)) + (*this)(a1, a0)));
  return worst;
}

double BlockSkewTensor::norm() const {
  return std::sqrt(frobenius_inner(entries_, entries_).real());
}

BlockSkewTensor& BlockSkewTensor::operator+=(const BlockSkewTensor& other) {
  require_same_shape(base_, other.base_, "BlockSkewTensor::operator+=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

BlockSkewTensor& BlockSkewTensor::operator*=(double s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

IndexPattern::IndexPattern(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw DimensionError("IndexPattern: rank must be at least 1");
  if (bits_.size() > 31) throw DimensionError("IndexPattern: rank too large");
  for (auto b : bits_)
    if (b > 1) throw std::invalid_argument("IndexPattern: bits must be 0 or 1");
}

IndexPattern IndexPattern::from_code(std::uint32_t code, std::size_t rank) {
  if (rank == 0 || rank > 31) throw DimensionError("IndexPattern: invalid rank");
  if (code >> rank) throw std::invalid_argument("IndexPattern: code exceeds 2^rank");
  std::vector<std::uint8_t> bits(rank);
  for (std::size_t k = 0; k < rank; ++k) bits[k] = (code >> k) & 1u;
  return IndexPattern(std::move(bits));
}

std::vector<IndexPattern> IndexPattern::enumerate(std::size_t rank) {
  std::vector<IndexPattern> out;
  const std::uint32_t count = 1u << rank;
  out.reserve(count);
  for (std::uint32_t c = 0; c < count; ++c) out.push_back(from_code(c, rank));
  return out;
}

std::uint32_t IndexPattern::code() const noexcept {
  std::uint32_t c = 0;
  for (std::size_t k = 0; k < bits_.size(); ++k) c |= std::uint32_t(bits_[k]) << k;
  return c;
}

bool IndexPattern::is_zero() const noexcept { return code() == 0; }

cplx frobenius_inner(std::span<const cplx> t, std::span<const cplx> s) {
  if (t.size() != s.size()) throw DimensionError("frobenius_inner: sizes differ");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) acc += std::conj(t[i]) * s[i];
  return acc;
}

cplx frobenius_inner(const CTensor& t, const CTensor& s) {
  require_same_shape(t.shape(), s.shape(), "frobenius_inner");
  return frobenius_inner(t.entries(), s.entries());
}

double frobenius_norm(const CTensor& t) {
  double acc = 0.0;
  for (const auto& z : t.entries()) acc += std::norm(z);
  return std::sqrt(acc);
}

PatternOffsets::PatternOffsets(const TensorShape& shape, const IndexPattern& pattern) {
  if (pattern.rank() != shape.rank())
    throw DimensionError("PatternOffsets: pattern rank does not match tensor rank");
  const std::size_t n = shape.size();
  p0.assign(n, 0);
  p1.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t rem = a;
    for (std::size_t k = 0; k < shape.rank(); ++k) {
      const std::size_t stride = shape.strides()[k];
      const std::size_t idx = rem / stride;
      rem %= stride;
      (pattern.bit(k) ? p1[a] : p0[a]) += stride * idx;
    }
  }
}

// Gain  G[a0] = sum_a1 Tc[a_{*i*}] conj(Tj[a1]) Tj[a_{*(1-i*)}]
// Loss  L[a0] = sum_a1 Tj[a_{*i*}] conj(Tc[a1]) Tj[a_{*(1-i*)}]
// where a_{*i*} takes coordinate k from a0 if i_k = 0 and from a1 if i_k = 1.
void accumulate_coupling(const PatternOffsets& offsets, std::span<const cplx> tc,
                         std::span<const cplx> tj, double kappa, std::span<cplx> out) {
  const std::size_t n = offsets.p0.size();
  if (tc.size() != n || tj.size() != n || out.size() != n)
    throw DimensionError("accumulate_coupling: sizes differ");
  if (kappa == 0.0) return;
  const auto& p0 = offsets.p0;
  const auto& p1 = offsets.p1;
  for (std::size_t a0 = 0; a0 < n; ++a0) {
    cplx acc = 0.0;
    const std::size_t q0 = p0[a0];
    const std::size_t q1 = p1[a0];
    for (std::size_t a1 = 0; a1 < n; ++a1) {
      const std::size_t in = q0 + p1[a1];
      const std::size_t cross = q1 + p0[a1];
      acc += (tc[in] * std::conj(tj[a1]) - tj[in] * std::conj(tc[a1])) * tj[cross];
    }
    out[a0] += kappa * acc;
  }
}

CTensor lt_coupling_term(const IndexPattern& pattern, const CTensor& tc, const CTensor& tj,
                         double kappa) {
  require_same_shape(tc.shape(), tj.shape(), "lt_coupling_term");
  CTensor out = CTensor::zeros(tc.shape());
  accumulate_coupling(PatternOffsets(tc.shape(), pattern), tc.entries(), tj.entries(), kappa,
                      out.entries());
  return out;
}

void apply_free_flow(const BlockSkewTensor& a, std::span<const cplx> t, std::span<cplx> out) {
  const std::size_t n = a.block_size();
  if (t.size() != n || out.size() != n) throw DimensionError("apply_free_flow: sizes differ");
  const auto e = a.entries();
  for (std::size_t a0 = 0; a0 < n; ++a0) {
    cplx acc = 0.0;
    const cplx* row = e.data() + a0 * n;
    for (std::size_t a1 = 0; a1 < n; ++a1) acc += row[a1] * t[a1];
    out[a0] = acc;
  }
}

CTensor apply_free_flow(const BlockSkewTensor& a, const CTensor& t) {
  require_same_shape(a.base_shape(), t.shape(), "apply_free_flow");
  CTensor out = CTensor::zeros(t.shape());
  apply_free_flow(a, t.entries(), out.entries());
  return out;
}

CTensor tensor_product(const CTensor& u, const CTensor& v) {
  CTensor out = CTensor::zeros(u.shape().concat(v.shape()));
  const std::size_t nv = v.size();
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < nv; ++j) out[i * nv + j] = u[i] * v[j];
  return out;
}

BlockSkewTensor random_block_skew(const TensorShape& shape, std::uint64_t seed, double scale) {
  Rng rng(seed);
  BlockSkewTensor a = BlockSkewTensor::zero(shape);
  const std::size_t n = shape.size();
  for (std::size_t a0 = 0; a0 < n; ++a0) {
    a(a0, a0) = cplx(0.0, scale * rng.uniform(-1.0, 1.0));
    for (std::size_t a1 = a0 + 1; a1 < n; ++a1) {
      const cplx z = scale * rng.complex_uniform();
      a(a0, a1) = z;
      a(a1, a0) = -std::conj(z);
    }
  }
  return a;
}

}  // namespace lohe
