#include "lohe/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace lohe {

namespace {

void require_nonempty(const StateViews& s, const char* what) {
  if (s.empty()) throw DimensionError(std::string(what) + ": empty ensemble");
  for (const auto& x : s)
    if (x.size() != s[0].size()) throw DimensionError(std::string(what) + ": state sizes differ");
}

double distance_squared(std::span<const cplx> a, std::span<const cplx> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return s;
}

}  // namespace

StateViews views(const std::vector<CTensor>& states) {
  StateViews v;
  for (const auto& t : states) v.push_back(t.entries());
  return v;
}

StateViews views(const std::vector<CVector>& states) {
  StateViews v;
  for (const auto& t : states) v.push_back(t);
  return v;
}

StateViews views(const std::vector<CMatrix>& states) {
  StateViews v;
  for (const auto& m : states) v.push_back({m.data(), std::size_t(m.size())});
  return v;
}

StateViews views(const std::vector<CVec>& states) {
  StateViews v;
  for (const auto& m : states) v.push_back({m.data(), std::size_t(m.size())});
  return v;
}

StateViews views(std::span<const cplx> flat, std::size_t block) {
  if (block == 0 || flat.size() % block != 0) throw DimensionError("views: bad block size");
  StateViews v;
  for (std::size_t o = 0; o < flat.size(); o += block) v.push_back(flat.subspan(o, block));
  return v;
}

double ensemble_diameter(const StateViews& states, double weight) {
  require_nonempty(states, "ensemble_diameter");
  double d = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      d = std::max(d, distance_squared(states[i], states[j]));
  return std::sqrt(weight * d);
}

double ensemble_diameter(const std::vector<BlockSkewTensor>& flows) {
  StateViews v;
  for (const auto& a : flows) v.push_back(a.entries());
  if (v.empty()) return 0.0;
  return ensemble_diameter(v);
}

double ensemble_diameter(const std::vector<RVec>& states) {
  double d = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      d = std::max(d, (states[i] - states[j]).norm());
  return d;
}

CVector centroid(const StateViews& states) {
  require_nonempty(states, "centroid");
  CVector c(states[0].size());
  for (const auto& x : states)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += x[i];
  const double inv = 1.0 / double(states.size());
  for (auto& z : c) z *= inv;
  return c;
}

double order_parameter_rho(const StateViews& states, double weight) {
  const CVector c = centroid(states);
  double s = 0.0;
  for (const auto& z : c) s += std::norm(z);
  return std::sqrt(weight * s);
}

CMatrix correlation_matrix(const StateViews& states, double weight, Conjugate conj) {
  require_nonempty(states, "correlation_matrix");
  const auto n = Eigen::Index(states.size());
  CMatrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      // frobenius_inner conjugates its first argument.
      const cplx v = weight * (conj == Conjugate::First ? frobenius_inner(states[i], states[j])
                                                        : frobenius_inner(states[j], states[i]));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = h(i, i).real();
  return h;
}

CMatrix correlation_matrix(const SLSystem& sys) {
  return correlation_matrix(views(sys.fields), sys.grid.cell(), Conjugate::Second);
}

CrossRatio cross_ratio(const CMatrix& h, std::size_t i, std::size_t j, std::size_t k,
                       std::size_t l, double tol) {
  const auto n = std::size_t(h.rows());
  if (i >= n || j >= n || k >= n || l >= n) throw DimensionError("cross_ratio: index out of range");
  auto e = [&](std::size_t a, std::size_t b) { return 1.0 - h(Eigen::Index(a), Eigen::Index(b)); };
  const cplx den1 = e(i, l), den2 = e(k, j);
  if (std::abs(den1) < tol || std::abs(den2) < tol) return {};
  return {e(i, j) * e(k, l) / (den1 * den2), true};
}

double variance_functional(const StateViews& states) {
  const CVector c = centroid(states);
  double s = 0.0;
  for (const auto& x : states) s += distance_squared(x, c);
  return s / double(states.size());
}

double variance_from_centroid(const StateViews& states) {
  const CVector c = centroid(states);
  double s = 0.0;
  for (const auto& z : c) s += std::norm(z);
  return 1.0 - s;
}

AggregationL aggregation_L(const std::vector<CMatrix>& u, const std::vector<CMatrix>& v) {
  if (u.empty() || u.size() != v.size()) throw DimensionError("aggregation_L: bad ensemble");
  AggregationL out;
  const double n = double(u[0].rows()), m = double(v[0].rows());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) {
      out.diameter_u = std::max(out.diameter_u, (u[i] - u[j]).norm());
      out.diameter_v = std::max(out.diameter_v, (v[i] - v[j]).norm());
      out.spread_u = std::max(out.spread_u, std::abs(n - frob(u[i], u[j])));
      out.spread_v = std::max(out.spread_v, std::abs(m - frob(v[i], v[j])));
    }
  return out;
}

double unitarity_defect(const std::vector<CMatrix>& u) {
  double d = 0.0;
  for (const auto& x : u)
    d = std::max(d, (x.adjoint() * x - CMatrix::Identity(x.cols(), x.cols())).norm());
  return d;
}

double potential_diameter(const SLSystem& sys) {
  const std::size_t n = sys.size(), m = sys.grid.size();
  auto value = [&](std::size_t j, std::size_t i) {
    return sys.potentials.empty() || sys.potentials[j].empty() ? 0.0 : sys.potentials[j][i];
  };
  double d = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t i = 0; i < m; ++i) d = std::max(d, std::abs(value(a, i) - value(b, i)));
  return d;
}

}  // namespace lohe
