#include "lohe/sphere_models.hpp"

#include <cmath>

namespace lohe {

namespace {

template <class M>
const M* pick(const std::vector<M>& v, std::size_t j) {
  if (v.empty()) return nullptr;
  return v.size() == 1 ? &v[0] : &v[j];
}

template <class M>
void check_flow_count(const std::vector<M>& v, std::size_t n, Eigen::Index d, const char* what) {
  if (!v.empty() && v.size() != 1 && v.size() != n)
    throw DimensionError(std::string(what) + ": need 0, 1 or N free-flow matrices");
  for (const auto& m : v)
    if (m.rows() != d || m.cols() != d)
      throw DimensionError(std::string(what) + ": free-flow matrix has wrong size");
}

}  // namespace

LHSModel::LHSModel(Eigen::Index dim, std::size_t count, std::vector<CMatrix> rotations,
                   double kappa0, double kappa1)
    : dim_(dim), count_(count), rotations_(std::move(rotations)), kappa0_(kappa0), kappa1_(kappa1) {
  if (dim_ <= 0 || count_ == 0) throw DimensionError("LHSModel: empty ensemble");
  check_flow_count(rotations_, count_, dim_, "LHSModel");
}

LHSModel::LHSModel(const LHSEnsemble& ens)
    : LHSModel(ens.states.empty() ? 0 : ens.states[0].size(), ens.states.size(), ens.rotations,
               ens.kappa0, ens.kappa1) {
  for (const auto& z : ens.states)
    if (z.size() != dim_) throw DimensionError("LHSModel: states have different dimensions");
}

LHSModel::LHSModel(const SphereEnsemble& ens)
    : dim_(ens.points.empty() ? 0 : ens.points[0].size()),
      count_(ens.points.size()),
      kappa0_(ens.kappa0),
      kappa1_(0.0) {
  if (dim_ <= 0 || count_ == 0) throw DimensionError("sphere model: empty ensemble");
  for (const auto& x : ens.points)
    if (x.size() != dim_) throw DimensionError("sphere model: points have different dimensions");
  check_flow_count(ens.rotations, count_, dim_, "sphere model");
  for (const auto& r : ens.rotations) rotations_.push_back(r.cast<cplx>());
}

void LHSModel::rhs(std::span<const cplx> y, std::span<cplx> dy) const {
  const std::size_t d = std::size_t(dim_);
  if (y.size() != d * count_ || dy.size() != y.size())
    throw DimensionError("LHSModel::rhs: state size mismatch");
  CVec zc = CVec::Zero(dim_);
  for (std::size_t j = 0; j < count_; ++j)
    zc += Eigen::Map<const CVec>(y.data() + j * d, dim_);
  zc /= double(count_);
  for (std::size_t j = 0; j < count_; ++j) {
    Eigen::Map<const CVec> z(y.data() + j * d, dim_);
    Eigen::Map<CVec> out(dy.data() + j * d, dim_);
    const cplx zz = z.squaredNorm();
    const cplx czj = zc.dot(z);  // <z_c, z_j>
    const cplx zjc = z.dot(zc);  // <z_j, z_c>
    out = kappa0_ * (zz * zc - czj * z) + kappa1_ * (zjc - czj) * z;
    if (const auto* om = pick(rotations_, j)) out += *om * z;
  }
}

CVector flatten(const std::vector<CVec>& v) {
  CVector y;
  for (const auto& z : v) y.insert(y.end(), z.data(), z.data() + z.size());
  return y;
}

CVector flatten(const std::vector<RVec>& v) {
  CVector y;
  for (const auto& x : v)
    for (Eigen::Index i = 0; i < x.size(); ++i) y.emplace_back(x(i), 0.0);
  return y;
}

std::vector<CVec> unflatten(std::span<const cplx> y, Eigen::Index dim) {
  std::vector<CVec> out;
  for (std::size_t off = 0; off + std::size_t(dim) <= y.size(); off += std::size_t(dim))
    out.emplace_back(Eigen::Map<const CVec>(y.data() + off, dim));
  return out;
}

std::vector<RVec> sphere_rhs(const SphereEnsemble& ens) {
  const LHSModel m(ens);
  const CVector y = flatten(ens.points);
  CVector dy(y.size());
  m.rhs(y, dy);
  std::vector<RVec> out;
  for (const auto& z : unflatten(dy, m.dim())) out.push_back(z.real());
  return out;
}

std::vector<CVec> lhs_rhs(const LHSEnsemble& ens) {
  const LHSModel m(ens);
  const CVector y = flatten(ens.states);
  CVector dy(y.size());
  m.rhs(y, dy);
  return unflatten(dy, m.dim());
}

void SDSEnsemble::validate() const {
  if (u.empty() || u.size() != v.size()) throw DimensionError("SDS: need N pairs (u_i, v_i)");
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i].size() != u[0].size() || v[i].size() != v[0].size())
      throw DimensionError("SDS: inconsistent factor dimensions");
  check_flow_count(omega, u.size(), u[0].size(), "SDS omega");
  check_flow_count(lambda, u.size(), v[0].size(), "SDS lambda");
}

SDSModel::SDSModel(const SDSEnsemble& ens)
    : count_((ens.validate(), ens.size())),
      d1_(ens.u[0].size()),
      d2_(ens.v[0].size()),
      omega_(ens.omega),
      lambda_(ens.lambda),
      kappa_(ens.kappa) {}

void SDSModel::rhs(std::span<const cplx> y, std::span<cplx> dy) const {
  const std::size_t b = std::size_t(d1_ + d2_);
  if (y.size() != b * count_ || dy.size() != y.size())
    throw DimensionError("SDSModel::rhs: state size mismatch");
  // Real parts only; imaginary parts are identically zero for real data.
  std::vector<RVec> u(count_), v(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    u[i] = Eigen::Map<const CVec>(y.data() + i * b, d1_).real();
    v[i] = Eigen::Map<const CVec>(y.data() + i * b + d1_, d2_).real();
  }
  const double w = kappa_ / double(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    RVec du = RVec::Zero(d1_), dv = RVec::Zero(d2_);
    for (std::size_t j = 0; j < count_; ++j) {
      const double uu = u[i].dot(u[j]);
      const double vv = v[i].dot(v[j]);
      du += vv * (u[j] - uu * u[i]);
      dv += uu * (v[j] - vv * v[i]);
    }
    du *= w;
    dv *= w;
    if (const auto* om = pick(omega_, i)) du += *om * u[i];
    if (const auto* la = pick(lambda_, i)) dv += *la * v[i];
    for (Eigen::Index k = 0; k < d1_; ++k) dy[i * b + k] = du(k);
    for (Eigen::Index k = 0; k < d2_; ++k) dy[i * b + d1_ + k] = dv(k);
  }
}

void SDSModel::project(std::span<cplx> y) const {
  const std::size_t b = std::size_t(d1_ + d2_);
  for (std::size_t i = 0; i < count_; ++i) {
    Eigen::Map<CVec> u(y.data() + i * b, d1_);
    Eigen::Map<CVec> v(y.data() + i * b + d1_, d2_);
    u.normalize();
    v.normalize();
  }
}

CVector flatten(const SDSEnsemble& ens) {
  CVector y;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (Eigen::Index k = 0; k < ens.u[i].size(); ++k) y.emplace_back(ens.u[i](k), 0.0);
    for (Eigen::Index k = 0; k < ens.v[i].size(); ++k) y.emplace_back(ens.v[i](k), 0.0);
  }
  return y;
}

void assign(SDSEnsemble& ens, std::span<const cplx> y) {
  std::size_t off = 0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (Eigen::Index k = 0; k < ens.u[i].size(); ++k) ens.u[i](k) = y[off++].real();
    for (Eigen::Index k = 0; k < ens.v[i].size(); ++k) ens.v[i](k) = y[off++].real();
  }
}

SDSTangent sds_rhs(const SDSEnsemble& ens) {
  const SDSModel m(ens);
  const CVector y = flatten(ens);
  CVector dy(y.size());
  m.rhs(y, dy);
  SDSEnsemble out = ens;
  assign(out, dy);
  return {out.u, out.v};
}

double sds_potential(const std::vector<RVec>& u, const std::vector<RVec>& v) {
  const std::size_t n = u.size();
  if (n == 0 || v.size() != n) throw DimensionError("sds_potential: need N pairs");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += u[i].dot(u[j]) * v[i].dot(v[j]);
  return 1.0 - s / double(n * n);
}

SDSTangent sds_gradient_flow(const SDSEnsemble& ens) {
  ens.validate();
  const std::size_t n = ens.size();
  const double nn = double(n);
  SDSTangent out;
  for (std::size_t i = 0; i < n; ++i) {
    RVec gu = RVec::Zero(ens.u[i].size()), gv = RVec::Zero(ens.v[i].size());
    for (std::size_t j = 0; j < n; ++j) {
      gu -= (2.0 / (nn * nn)) * ens.v[i].dot(ens.v[j]) * ens.u[j];
      gv -= (2.0 / (nn * nn)) * ens.u[i].dot(ens.u[j]) * ens.v[j];
    }
    gu -= gu.dot(ens.u[i]) * ens.u[i];
    gv -= gv.dot(ens.v[i]) * ens.v[i];
    out.du.push_back(-(nn * ens.kappa / 2.0) * gu);
    out.dv.push_back(-(nn * ens.kappa / 2.0) * gv);
  }
  return out;
}

}  // namespace lohe
