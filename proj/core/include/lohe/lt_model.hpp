// The Lohe tensor model
//   dT_j/dt = A_j T_j + sum_{i*} kappa_{i*} (Tc_{a*i*} conj(Tj)_{a*1} Tj_{a*(1-i*)}
//                                         - Tj_{a*i*} conj(Tc)_{a*1} Tj_{a*(1-i*)})
// with Tc the arithmetic mean of the ensemble.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lohe/tensor.hpp"
#include "lohe/timeseries.hpp"

namespace lohe {

// kappa_{i*} for all 2^m patterns, indexed by IndexPattern::code().
class CouplingVector {
 public:
  CouplingVector() = default;
  explicit CouplingVector(std::size_t rank);
  CouplingVector(std::size_t rank, std::vector<double> values);

  std::size_t rank() const noexcept { return rank_; }
  double operator[](const IndexPattern& p) const { return values_.at(p.code()); }
  double value(std::uint32_t code) const { return values_.at(code); }
  void set(const IndexPattern& p, double kappa);
  void set(std::uint32_t code, double kappa);
  const std::vector<double>& values() const noexcept { return values_; }

  double kappa0() const { return values_.at(0); }
  // Sum over all non-zero patterns.
  double kappa_hat0() const;

 private:
  std::size_t rank_ = 0;
  std::vector<double> values_;
};

struct LTEnsemble {
  std::vector<CTensor> states;
  // Empty means zero free flow; a single entry is shared by every oscillator.
  std::vector<BlockSkewTensor> free_flows;
  CouplingVector coupling;

  std::size_t size() const noexcept { return states.size(); }
  const TensorShape& shape() const { return states.at(0).shape(); }
  // Throws on shape/coupling inconsistencies. When require_unit is set, each
  // state must have unit Frobenius norm to 1e-10.
  void validate(bool require_unit = false) const;

  CVector flatten() const;
  void assign(std::span<const cplx> flat);
};

// RHS evaluator with the pattern offset tables precomputed once.
class LTModel {
 public:
  LTModel(TensorShape shape, std::size_t count, std::vector<BlockSkewTensor> free_flows,
          CouplingVector coupling);
  explicit LTModel(const LTEnsemble& ens);

  std::size_t count() const noexcept { return count_; }
  std::size_t block() const noexcept { return shape_.size(); }
  const TensorShape& shape() const noexcept { return shape_; }
  const CouplingVector& coupling() const noexcept { return coupling_; }

  // dy over the flat concatenation of the N states.
  void rhs(std::span<const cplx> y, std::span<cplx> dy) const;

 private:
  TensorShape shape_;
  std::size_t count_;
  std::vector<BlockSkewTensor> free_flows_;
  CouplingVector coupling_;
  std::vector<PatternOffsets> offsets_;
  std::vector<double> kappas_;
  mutable CVector centroid_;
};

std::vector<CTensor> lt_rhs(const LTEnsemble& ens);

// Arithmetic mean of the blocks of a flat ensemble state.
CVector block_mean(std::span<const cplx> y, std::size_t block);

// Max over samples of |norm_<j>(t) - norm_<j>(0)| for each oscillator j = 1..count.
std::vector<double> check_conservation(const TimeSeries& traj, std::size_t count);

}  // namespace lohe
