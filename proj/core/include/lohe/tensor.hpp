// tensor.hpp — dense complex tensors, block skew-hermitian free-flow tensors
// and the index-pattern contractions of the Lohe tensor coupling.
//
// Layout: row-major, last index fastest. A flat offset is sum_k stride_k * a_k
// with stride_{m-1} = 1.

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "lohe/types.hpp"

namespace lohe {

class TensorShape {
 public:
  TensorShape() = default;
  explicit TensorShape(std::vector<std::size_t> dims);
  TensorShape(std::initializer_list<std::size_t> dims);

  std::size_t rank() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t k) const { return dims_.at(k); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<std::size_t>& strides() const noexcept { return strides_; }
  std::size_t size() const noexcept { return size_; }

  std::size_t flat_index(std::span<const std::size_t> multi) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;

  // Shape of the concatenation (this, other).
  TensorShape concat(const TensorShape& other) const;

  bool operator==(const TensorShape& other) const noexcept { return dims_ == other.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

class CTensor {
 public:
  CTensor() = default;
  CTensor(TensorShape shape, CVector entries);

  static CTensor zeros(const TensorShape& shape);

  const TensorShape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return entries_.size(); }

  std::span<const cplx> entries() const noexcept { return entries_; }
  std::span<cplx> entries() noexcept { return entries_; }
  const CVector& values() const noexcept { return entries_; }

  cplx& operator[](std::size_t i) { return entries_[i]; }
  const cplx& operator[](std::size_t i) const { return entries_[i]; }
  cplx& at(std::span<const std::size_t> multi) { return entries_[shape_.flat_index(multi)]; }
  const cplx& at(std::span<const std::size_t> multi) const {
    return entries_[shape_.flat_index(multi)];
  }

  CTensor conj() const;
  double norm() const;

  CTensor& operator+=(const CTensor& other);
  CTensor& operator-=(const CTensor& other);
  CTensor& operator*=(cplx s);

 private:
  TensorShape shape_;
  CVector entries_;
};

CTensor operator+(CTensor a, const CTensor& b);
CTensor operator-(CTensor a, const CTensor& b);
CTensor operator*(cplx s, CTensor a);

// Rank-2m tensor A with [conj A]_{a0 a1} = -[A]_{a1 a0}. Stored as an n x n
// row-major matrix over flat multi-indices of the base shape (n = base size).
class BlockSkewTensor {
 public:
  BlockSkewTensor() = default;
  // Entries are taken as given; use skew_defect() to audit external data.
  BlockSkewTensor(TensorShape base_shape, CVector entries);

  static BlockSkewTensor zero(const TensorShape& base_shape);

  const TensorShape& base_shape() const noexcept { return base_; }
  std::size_t block_size() const noexcept { return base_.size(); }
  std::span<const cplx> entries() const noexcept { return entries_; }
  std::span<cplx> entries() noexcept { return entries_; }

  cplx& operator()(std::size_t a0, std::size_t a1) { return entries_[a0 * base_.size() + a1]; }
  const cplx& operator()(std::size_t a0, std::size_t a1) const {
    return entries_[a0 * base_.size() + a1];
  }

  // max |conj A(a0,a1) + A(a1,a0)| over all index pairs.
  double skew_defect() const;
  double norm() const;

  BlockSkewTensor& operator+=(const BlockSkewTensor& other);
  BlockSkewTensor& operator*=(double s);

 private:
  TensorShape base_;
  CVector entries_;
};

// i* in {0,1}^m. Codes are little-endian in the coordinate index: the bit of
// the first coordinate is the least significant.
class IndexPattern {
 public:
  IndexPattern() = default;
  explicit IndexPattern(std::vector<std::uint8_t> bits);

  static IndexPattern from_code(std::uint32_t code, std::size_t rank);
  static std::vector<IndexPattern> enumerate(std::size_t rank);

  std::size_t rank() const noexcept { return bits_.size(); }
  std::uint8_t bit(std::size_t k) const { return bits_.at(k); }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::uint32_t code() const noexcept;
  bool is_zero() const noexcept;

 private:
  std::vector<std::uint8_t> bits_;
};

// <T,S>_F = sum conj(T) S.
cplx frobenius_inner(const CTensor& t, const CTensor& s);
cplx frobenius_inner(std::span<const cplx> t, std::span<const cplx> s);
double frobenius_norm(const CTensor& t);

// Precomputed offset split for one pattern: offset(a_{*i*}) = p0[a0] + p1[a1].
struct PatternOffsets {
  std::vector<std::size_t> p0;  // contribution of coordinates with bit 0
  std::vector<std::size_t> p1;  // contribution of coordinates with bit 1

  PatternOffsets(const TensorShape& shape, const IndexPattern& pattern);
};

// Adds kappa * (gain - loss) of the Lohe tensor coupling for one pattern to out.
void accumulate_coupling(const PatternOffsets& offsets, std::span<const cplx> tc,
                         std::span<const cplx> tj, double kappa, std::span<cplx> out);

CTensor lt_coupling_term(const IndexPattern& pattern, const CTensor& tc, const CTensor& tj,
                         double kappa);

// [A T]_{a0} = [A]_{a0 a1} [T]_{a1}.
CTensor apply_free_flow(const BlockSkewTensor& a, const CTensor& t);
void apply_free_flow(const BlockSkewTensor& a, std::span<const cplx> t, std::span<cplx> out);

CTensor tensor_product(const CTensor& u, const CTensor& v);

BlockSkewTensor random_block_skew(const TensorShape& shape, std::uint64_t seed,
                                  double scale = 1.0);

}  // namespace lohe
