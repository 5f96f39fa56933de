#include "lohe/matrix_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lohe {

namespace {

template <class M>
const M* pick(const std::vector<M>& v, std::size_t j) {
  if (v.empty()) return nullptr;
  return v.size() == 1 ? &v[0] : &v[j];
}

template <class M>
void check_count(const std::vector<M>& v, std::size_t n, const char* what) {
  if (!v.empty() && v.size() != 1 && v.size() != n)
    throw DimensionError(std::string(what) + ": need 0, 1 or N free flows");
}

void check_square(const std::vector<CMatrix>& v, Eigen::Index n, const char* what) {
  for (const auto& m : v)
    if (m.rows() != n || m.cols() != n)
      throw DimensionError(std::string(what) + ": free-flow matrix has wrong size");
}

void check_tensor_shape(const std::vector<BlockSkewTensor>& v, const TensorShape& shape,
                        const char* what) {
  for (const auto& a : v)
    if (!(a.base_shape() == shape))
      throw DimensionError(std::string(what) + ": free-flow tensor has wrong base shape");
}

CMatrix centroid(const std::vector<ConstCMatrixMap>& m) {
  CMatrix c = CMatrix::Zero(m[0].rows(), m[0].cols());
  for (const auto& x : m) c += x;
  return c / double(m.size());
}

std::vector<ConstCMatrixMap> views(std::span<const cplx> y, std::size_t count, std::size_t stride,
                                   std::size_t offset, Eigen::Index r, Eigen::Index c) {
  std::vector<ConstCMatrixMap> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.emplace_back(y.data() + j * stride + offset, r, c);
  return out;
}

}  // namespace

void MatrixEnsemble::validate() const {
  if (states.empty()) throw DimensionError("matrix model: no states");
  for (const auto& t : states)
    if (t.rows() != rows() || t.cols() != cols())
      throw DimensionError("matrix model: states have different sizes");
  if (!left_flows.empty() && !tensor_flows.empty())
    throw ConfigurationError("matrix model: set either left_flows or tensor_flows, not both");
  check_count(left_flows, size(), "matrix model");
  check_count(tensor_flows, size(), "matrix model");
  check_square(left_flows, rows(), "matrix model");
  check_tensor_shape(tensor_flows, TensorShape{std::size_t(rows()), std::size_t(cols())},
                     "matrix model");
}

MatrixLoheModel::MatrixLoheModel(const MatrixEnsemble& ens)
    : count_((ens.validate(), ens.size())),
      rows_(ens.rows()),
      cols_(ens.cols()),
      left_(ens.left_flows),
      tensor_(ens.tensor_flows),
      kappa1_(ens.kappa1),
      kappa2_(ens.kappa2) {}

void MatrixLoheModel::rhs(std::span<const cplx> y, std::span<cplx> dy) const {
  const std::size_t b = block();
  if (y.size() != b * count_ || dy.size() != y.size())
    throw DimensionError("MatrixLoheModel::rhs: state size mismatch");
  const auto t = views(y, count_, b, 0, rows_, cols_);
  const CMatrix tc = centroid(t);
  const CMatrix tc_adj = tc.adjoint();
  for (std::size_t j = 0; j < count_; ++j) {
    const auto& tj = t[j];
    const CMatrix tj_adj = tj.adjoint();
    const CMatrix loss = tj * tc_adj * tj;
    CMatrix out = kappa1_ * (tc * tj_adj * tj - loss) + kappa2_ * (tj * tj_adj * tc - loss);
    if (const auto* bj = pick(left_, j)) out += *bj * tj;
    auto dst = as_matrix(dy.subspan(j * b, b), rows_, cols_);
    dst = out;
    if (const auto* aj = pick(tensor_, j)) {
      CVector tmp(b);
      apply_free_flow(*aj, y.subspan(j * b, b), tmp);
      for (std::size_t i = 0; i < b; ++i) dy[j * b + i] += tmp[i];
    }
  }
}

std::vector<CMatrix> gen_lohe_matrix_rhs(const MatrixEnsemble& ens) {
  const MatrixLoheModel m(ens);
  const CVector y = flatten(ens.states);
  CVector dy(y.size());
  m.rhs(y, dy);
  return unflatten_matrices(dy, ens.rows(), ens.cols());
}

CVector flatten(const std::vector<CMatrix>& m) {
  CVector y;
  for (const auto& x : m) y.insert(y.end(), x.data(), x.data() + x.size());
  return y;
}

std::vector<CMatrix> unflatten_matrices(std::span<const cplx> y, Eigen::Index rows,
                                        Eigen::Index cols) {
  const std::size_t b = std::size_t(rows * cols);
  std::vector<CMatrix> out;
  for (std::size_t off = 0; off + b <= y.size(); off += b)
    out.emplace_back(ConstCMatrixMap(y.data() + off, rows, cols));
  return out;
}

BlockSkewTensor left_multiplication_flow(const CMatrix& b, Eigen::Index cols) {
  const Eigen::Index d1 = b.rows();
  BlockSkewTensor a = BlockSkewTensor::zero(TensorShape{std::size_t(d1), std::size_t(cols)});
  for (Eigen::Index al = 0; al < d1; ++al)
    for (Eigen::Index be = 0; be < cols; ++be)
      for (Eigen::Index ga = 0; ga < d1; ++ga)
        a(std::size_t(al * cols + be), std::size_t(ga * cols + be)) = b(al, ga);
  return a;
}

BlockSkewTensor right_multiplication_flow(const CMatrix& c, Eigen::Index rows) {
  const Eigen::Index d2 = c.rows();
  BlockSkewTensor a = BlockSkewTensor::zero(TensorShape{std::size_t(rows), std::size_t(d2)});
  for (Eigen::Index al = 0; al < rows; ++al)
    for (Eigen::Index be = 0; be < d2; ++be)
      for (Eigen::Index de = 0; de < d2; ++de)
        a(std::size_t(al * d2 + be), std::size_t(al * d2 + de)) = c(be, de);
  return a;
}

double SvdReduction::mean_lambda_sq() const { return lambda_sq.mean(); }

double SvdReduction::spread_lambda_sq() const {
  const double m = mean_lambda_sq();
  return (lambda_sq.array() - m).abs().maxCoeff();
}

SvdReduction svd_reduce(const MatrixEnsemble& ens, double gram_tol) {
  ens.validate();
  if (ens.kappa2 != 0.0) throw ConfigurationError("svd_reduce: requires kappa2 = 0");
  if (!ens.tensor_flows.empty())
    throw ConfigurationError("svd_reduce: free flow must be a left multiplication B_j T_j");
  const CMatrix gram0 = ens.states[0].adjoint() * ens.states[0];
  for (std::size_t j = 1; j < ens.size(); ++j) {
    const double dev = (ens.states[j].adjoint() * ens.states[j] - gram0).cwiseAbs().maxCoeff();
    if (dev > gram_tol)
      throw ConfigurationError("svd_reduce: Gram matrices T_j^+ T_j differ (deviation " +
                               std::to_string(dev) + ")");
  }
  const Eigen::Index d1 = ens.rows(), d2 = ens.cols();
  Eigen::JacobiSVD<CMatrix> svd(ens.states[0], Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVec sigma = svd.singularValues();
  const CMatrix& z = svd.matrixV();

  SvdReduction red;
  red.kappa1 = ens.kappa1;
  red.left_flows = ens.left_flows;
  red.S = CMatrix::Zero(d1, d2);
  red.lambda_sq = RVec::Zero(d1);
  const double smax = sigma.size() ? sigma(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    red.lambda_sq(k) = sigma(k) * sigma(k);
    if (sigma(k) > 1e-12 * std::max(smax, 1e-300)) rank = k + 1;
  }
  // S = Sigma Z^+.
  for (Eigen::Index k = 0; k < sigma.size(); ++k) red.S.row(k) = sigma(k) * z.col(k).adjoint();

  for (const auto& tj : ens.states) {
    CMatrix known(d1, rank);
    for (Eigen::Index k = 0; k < rank; ++k) known.col(k) = tj * z.col(k) / sigma(k);
    CMatrix u(d1, d1);
    u.leftCols(rank) = known;
    if (rank < d1) {
      Eigen::HouseholderQR<CMatrix> qr(known);
      const CMatrix q = qr.householderQ();
      u.rightCols(d1 - rank) = q.rightCols(d1 - rank);
    }
    red.U0.push_back(u);
  }
  return red;
}

UnitaryLoheModel::UnitaryLoheModel(const SvdReduction& red)
    : count_(red.U0.size()),
      n_(red.lambda_sq.size()),
      D_(red.lambda_sq.cast<cplx>().asDiagonal()),
      left_(red.left_flows),
      kappa1_(red.kappa1) {
  if (count_ == 0) throw DimensionError("UnitaryLoheModel: no states");
}

void UnitaryLoheModel::rhs(std::span<const cplx> y, std::span<cplx> dy) const {
  const std::size_t b = std::size_t(n_ * n_);
  if (y.size() != b * count_ || dy.size() != y.size())
    throw DimensionError("UnitaryLoheModel::rhs: state size mismatch");
  const auto u = views(y, count_, b, 0, n_, n_);
  const CMatrix uc = centroid(u);
  const CMatrix ucd = uc * D_;
  const CMatrix d_ucadj = D_ * uc.adjoint();
  for (std::size_t j = 0; j < count_; ++j) {
    CMatrix out = kappa1_ * (ucd - u[j] * d_ucadj * u[j]);
    if (const auto* bj = pick(left_, j)) out += *bj * u[j];
    as_matrix(dy.subspan(j * b, b), n_, n_) = out;
  }
}

void UnitaryLoheModel::project(std::span<cplx> y) const {
  const std::size_t b = std::size_t(n_ * n_);
  for (std::size_t j = 0; j < count_; ++j) {
    auto m = as_matrix(y.subspan(j * b, b), n_, n_);
    m = polar_unitary(CMatrix(m));
  }
}

void SDMEnsemble::validate() const {
  if (U.empty() || U.size() != V.size()) throw DimensionError("SDM: need N pairs (U_j, V_j)");
  for (std::size_t j = 0; j < U.size(); ++j)
    if (U[j].rows() != U[0].rows() || U[j].cols() != U[0].cols() ||
        V[j].rows() != V[0].rows() || V[j].cols() != V[0].cols())
      throw DimensionError("SDM: inconsistent factor sizes");
  check_count(B, size(), "SDM B");
  check_count(C, size(), "SDM C");
  check_tensor_shape(B, TensorShape{std::size_t(U[0].rows()), std::size_t(U[0].cols())}, "SDM B");
  check_tensor_shape(C, TensorShape{std::size_t(V[0].rows()), std::size_t(V[0].cols())}, "SDM C");
}

SDMModel::SDMModel(const SDMEnsemble& ens)
    : count_((ens.validate(), ens.size())),
      d1_(ens.U[0].rows()),
      d2_(ens.U[0].cols()),
      d3_(ens.V[0].rows()),
      d4_(ens.V[0].cols()),
      B_(ens.B),
      C_(ens.C),
      kappa1_(ens.kappa1),
      kappa2_(ens.kappa2) {}

void SDMModel::rhs(std::span<const cplx> y, std::span<cplx> dy) const {
  const std::size_t bu = std::size_t(d1_ * d2_), bv = std::size_t(d3_ * d4_), b = bu + bv;
  if (y.size() != b * count_ || dy.size() != y.size())
    throw DimensionError("SDMModel::rhs: state size mismatch");
  const auto u = views(y, count_, b, 0, d1_, d2_);
  const auto v = views(y, count_, b, bu, d3_, d4_);
  const double w1 = kappa1_ / double(count_), w2 = kappa2_ / double(count_);
  for (std::size_t j = 0; j < count_; ++j) {
    const CMatrix uj_adj = u[j].adjoint(), vj_adj = v[j].adjoint();
    CMatrix du = CMatrix::Zero(d1_, d2_), dv = CMatrix::Zero(d3_, d4_);
    for (std::size_t k = 0; k < count_; ++k) {
      const cplx vjk = frob(v[j], v[k]), vkj = std::conj(vjk);
      const cplx ujk = frob(u[j], u[k]), ukj = std::conj(ujk);
      const CMatrix u_loss = u[j] * u[k].adjoint() * u[j];
      const CMatrix v_loss = v[j] * v[k].adjoint() * v[j];
      du += w1 * (vjk * (u[k] * uj_adj * u[j]) - vkj * u_loss) +
            w2 * (vjk * (u[j] * uj_adj * u[k]) - vkj * u_loss);
      dv += w1 * (ujk * (v[k] * vj_adj * v[j]) - ukj * v_loss) +
            w2 * (ujk * (v[j] * vj_adj * v[k]) - ukj * v_loss);
    }
    as_matrix(dy.subspan(j * b, bu), d1_, d2_) = du;
    as_matrix(dy.subspan(j * b + bu, bv), d3_, d4_) = dv;
    CVector tmp;
    if (const auto* bj = pick(B_, j)) {
      tmp.assign(bu, cplx{});
      apply_free_flow(*bj, y.subspan(j * b, bu), tmp);
      for (std::size_t i = 0; i < bu; ++i) dy[j * b + i] += tmp[i];
    }
    if (const auto* cj = pick(C_, j)) {
      tmp.assign(bv, cplx{});
      apply_free_flow(*cj, y.subspan(j * b + bu, bv), tmp);
      for (std::size_t i = 0; i < bv; ++i) dy[j * b + bu + i] += tmp[i];
    }
  }
}

CVector flatten(const SDMEnsemble& ens) {
  CVector y;
  for (std::size_t j = 0; j < ens.size(); ++j) {
    y.insert(y.end(), ens.U[j].data(), ens.U[j].data() + ens.U[j].size());
    y.insert(y.end(), ens.V[j].data(), ens.V[j].data() + ens.V[j].size());
  }
  return y;
}

void assign(SDMEnsemble& ens, std::span<const cplx> y) {
  std::size_t off = 0;
  for (std::size_t j = 0; j < ens.size(); ++j) {
    std::copy_n(y.begin() + off, ens.U[j].size(), ens.U[j].data());
    off += std::size_t(ens.U[j].size());
    std::copy_n(y.begin() + off, ens.V[j].size(), ens.V[j].data());
    off += std::size_t(ens.V[j].size());
  }
}

SDMEnsemble sdm_rhs(const SDMEnsemble& ens) {
  const SDMModel m(ens);
  const CVector y = flatten(ens);
  CVector dy(y.size());
  m.rhs(y, dy);
  SDMEnsemble out = ens;
  assign(out, dy);
  return out;
}

double sdm_potential(const std::vector<CMatrix>& u, const std::vector<CMatrix>& v) {
  const std::size_t n = u.size();
  if (n == 0 || v.size() != n) throw DimensionError("sdm_potential: need N pairs");
  cplx s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += frob(u[i], u[j]) * frob(v[i], v[j]);
  return 1.0 - s.real() / double(n * n);
}

void UnitaryPairEnsemble::validate() const {
  if (U.empty() || U.size() != V.size()) throw DimensionError("unitary pair: need N pairs");
  const auto n = U[0].rows(), m = V[0].rows();
  for (std::size_t j = 0; j < U.size(); ++j)
    if (U[j].rows() != n || U[j].cols() != n || V[j].rows() != m || V[j].cols() != m)
      throw DimensionError("unitary pair: factors must be n x n and m x m");
  check_count(H, size(), "unitary pair H");
  check_count(G, size(), "unitary pair G");
  check_square(H, n, "unitary pair H");
  check_square(G, m, "unitary pair G");
}

UnitaryPairModel::UnitaryPairModel(const UnitaryPairEnsemble& ens)
    : count_((ens.validate(), ens.size())),
      n_(ens.U[0].rows()),
      m_(ens.V[0].rows()),
      H_(ens.H),
      G_(ens.G),
      kappa_(ens.kappa) {}

void UnitaryPairModel::rhs(std::span<const cplx> y, std::span<cplx> dy) const {
  const std::size_t bu = std::size_t(n_ * n_), bv = std::size_t(m_ * m_), b = bu + bv;
  if (y.size() != b * count_ || dy.size() != y.size())
    throw DimensionError("UnitaryPairModel::rhs: state size mismatch");
  const auto u = views(y, count_, b, 0, n_, n_);
  const auto v = views(y, count_, b, bu, m_, m_);
  const double w = kappa_ / double(count_);
  for (std::size_t j = 0; j < count_; ++j) {
    CMatrix du = CMatrix::Zero(n_, n_), dv = CMatrix::Zero(m_, m_);
    for (std::size_t k = 0; k < count_; ++k) {
      const cplx vjk = frob(v[j], v[k]), ujk = frob(u[j], u[k]);
      du += vjk * u[k] - std::conj(vjk) * (u[j] * u[k].adjoint() * u[j]);
      dv += ujk * v[k] - std::conj(ujk) * (v[j] * v[k].adjoint() * v[j]);
    }
    du *= w;
    dv *= w;
    if (const auto* h = pick(H_, j)) du -= kI * (*h * u[j]);
    if (const auto* g = pick(G_, j)) dv -= kI * (*g * v[j]);
    as_matrix(dy.subspan(j * b, bu), n_, n_) = du;
    as_matrix(dy.subspan(j * b + bu, bv), m_, m_) = dv;
  }
}

void UnitaryPairModel::project(std::span<cplx> y) const {
  const std::size_t bu = std::size_t(n_ * n_), bv = std::size_t(m_ * m_), b = bu + bv;
  for (std::size_t j = 0; j < count_; ++j) {
    auto mu = as_matrix(y.subspan(j * b, bu), n_, n_);
    mu = polar_unitary(CMatrix(mu));
    auto mv = as_matrix(y.subspan(j * b + bu, bv), m_, m_);
    mv = polar_unitary(CMatrix(mv));
  }
}

CVector flatten(const UnitaryPairEnsemble& ens) {
  CVector y;
  for (std::size_t j = 0; j < ens.size(); ++j) {
    y.insert(y.end(), ens.U[j].data(), ens.U[j].data() + ens.U[j].size());
    y.insert(y.end(), ens.V[j].data(), ens.V[j].data() + ens.V[j].size());
  }
  return y;
}

void assign(UnitaryPairEnsemble& ens, std::span<const cplx> y) {
  std::size_t off = 0;
  for (std::size_t j = 0; j < ens.size(); ++j) {
    std::copy_n(y.begin() + off, ens.U[j].size(), ens.U[j].data());
    off += std::size_t(ens.U[j].size());
    std::copy_n(y.begin() + off, ens.V[j].size(), ens.V[j].data());
    off += std::size_t(ens.V[j].size());
  }
}

UnitaryPairEnsemble unitary_pair_rhs(const UnitaryPairEnsemble& ens) {
  const UnitaryPairModel m(ens);
  const CVector y = flatten(ens);
  CVector dy(y.size());
  m.rhs(y, dy);
  UnitaryPairEnsemble out = ens;
  assign(out, dy);
  return out;
}

double unitary_pair_potential(const std::vector<CMatrix>& u, const std::vector<CMatrix>& v) {
  return sdm_potential(u, v);
}

}  // namespace lohe
