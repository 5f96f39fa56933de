#include "lohe/lt_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lohe {

CouplingVector::CouplingVector(std::size_t rank) : rank_(rank) {
  if (rank == 0 || rank > 16) throw DimensionError("CouplingVector: invalid rank");
  values_.assign(std::size_t(1) << rank, 0.0);
}

CouplingVector::CouplingVector(std::size_t rank, std::vector<double> values)
    : CouplingVector(rank) {
  if (values.size() != values_.size())
    throw DimensionError("CouplingVector: expected 2^rank coupling constants");
  for (std::uint32_t c = 0; c < values.size(); ++c) set(c, values[c]);
}

void CouplingVector::set(const IndexPattern& p, double kappa) {
  if (p.rank() != rank_) throw DimensionError("CouplingVector: pattern rank mismatch");
  set(p.code(), kappa);
}

void CouplingVector::set(std::uint32_t code, double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ConfigurationError("CouplingVector: coupling constants must be finite and >= 0");
  values_.at(code) = kappa;
}

double CouplingVector::kappa_hat0() const {
  double s = 0.0;
  for (std::size_t c = 1; c < values_.size(); ++c) s += values_[c];
  return s;
}

void LTEnsemble::validate(bool require_unit) const {
  if (states.empty()) throw ConfigurationError("LTEnsemble: no states");
  const auto& sh = states.front().shape();
  for (const auto& s : states)
    if (!(s.shape() == sh)) throw DimensionError("LTEnsemble: states have different shapes");
  if (coupling.rank() != sh.rank())
    throw DimensionError("LTEnsemble: coupling rank does not match tensor rank");
  if (!free_flows.empty() && free_flows.size() != 1 && free_flows.size() != states.size())
    throw DimensionError("LTEnsemble: need 0, 1 or N free-flow tensors");
  for (const auto& a : free_flows)
    if (!(a.base_shape() == sh)) throw DimensionError("LTEnsemble: free-flow shape mismatch");
  if (require_unit)
    for (std::size_t j = 0; j < states.size(); ++j)
      if (std::abs(states[j].norm() - 1.0) > 1e-10)
        throw ConfigurationError("LTEnsemble: state " + std::to_string(j + 1) +
                                 " is not unit-norm");
}

CVector LTEnsemble::flatten() const {
  CVector y;
  y.reserve(states.size() * shape().size());
  for (const auto& s : states) y.insert(y.end(), s.values().begin(), s.values().end());
  return y;
}

void LTEnsemble::assign(std::span<const cplx> flat) {
  const std::size_t b = shape().size();
  if (flat.size() != b * states.size()) throw DimensionError("LTEnsemble::assign: size mismatch");
  for (std::size_t j = 0; j < states.size(); ++j)
    std::copy_n(flat.begin() + j * b, b, states[j].entries().begin());
}

LTModel::LTModel(TensorShape shape, std::size_t count, std::vector<BlockSkewTensor> free_flows,
                 CouplingVector coupling)
    : shape_(std::move(shape)),
      count_(count),
      free_flows_(std::move(free_flows)),
      coupling_(std::move(coupling)) {
  if (count_ == 0) throw ConfigurationError("LTModel: empty ensemble");
  if (coupling_.rank() != shape_.rank()) throw DimensionError("LTModel: coupling rank mismatch");
  if (!free_flows_.empty() && free_flows_.size() != 1 && free_flows_.size() != count_)
    throw DimensionError("LTModel: need 0, 1 or N free-flow tensors");
  for (const auto& a : free_flows_)
    if (!(a.base_shape() == shape_)) throw DimensionError("LTModel: free-flow shape mismatch");
  for (std::uint32_t c = 0; c < coupling_.values().size(); ++c) {
    if (coupling_.value(c) == 0.0) continue;
    offsets_.emplace_back(shape_, IndexPattern::from_code(c, shape_.rank()));
    kappas_.push_back(coupling_.value(c));
  }
  centroid_.resize(shape_.size());
}

LTModel::LTModel(const LTEnsemble& ens)
    : LTModel((ens.validate(), ens.shape()), ens.size(), ens.free_flows, ens.coupling) {}

void LTModel::rhs(std::span<const cplx> y, std::span<cplx> dy) const {
  const std::size_t b = block();
  if (y.size() != b * count_ || dy.size() != y.size())
    throw DimensionError("LTModel::rhs: state size mismatch");
  std::fill(centroid_.begin(), centroid_.end(), cplx{});
  for (std::size_t j = 0; j < count_; ++j)
    for (std::size_t i = 0; i < b; ++i) centroid_[i] += y[j * b + i];
  for (auto& z : centroid_) z /= double(count_);

  for (std::size_t j = 0; j < count_; ++j) {
    const auto tj = y.subspan(j * b, b);
    auto out = dy.subspan(j * b, b);
    if (free_flows_.empty())
      std::fill(out.begin(), out.end(), cplx{});
    else
      apply_free_flow(free_flows_.size() == 1 ? free_flows_[0] : free_flows_[j], tj, out);
    for (std::size_t p = 0; p < offsets_.size(); ++p)
      accumulate_coupling(offsets_[p], centroid_, tj, kappas_[p], out);
  }
}

std::vector<CTensor> lt_rhs(const LTEnsemble& ens) {
  const LTModel model(ens);
  const CVector y = ens.flatten();
  CVector dy(y.size());
  model.rhs(y, dy);
  std::vector<CTensor> out;
  const std::size_t b = model.block();
  for (std::size_t j = 0; j < ens.size(); ++j)
    out.emplace_back(ens.shape(), CVector(dy.begin() + j * b, dy.begin() + (j + 1) * b));
  return out;
}

CVector block_mean(std::span<const cplx> y, std::size_t block) {
  if (block == 0 || y.size() % block != 0) throw DimensionError("block_mean: bad block size");
  const std::size_t n = y.size() / block;
  CVector c(block);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < block; ++i) c[i] += y[j * block + i];
  for (auto& z : c) z /= double(n);
  return c;
}

std::vector<double> check_conservation(const TimeSeries& traj, std::size_t count) {
  std::vector<double> dev(count, 0.0);
  for (std::size_t j = 0; j < count; ++j) {
    const auto& col = traj.channel("norm_" + std::to_string(j + 1));
    if (col.empty()) continue;
    for (double v : col) dev[j] = std::max(dev[j], std::abs(v - col.front()));
  }
  return dev;
}

}  // namespace lohe
