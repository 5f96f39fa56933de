#include "lohe/theorem_constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lohe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double largest_positive(const std::vector<double>& roots) {
  double best = kNaN;
  for (double r : roots)
    if (r > 0.0 && !(r <= best)) best = r;
  return best;
}

}  // namespace

std::vector<double> real_cubic_roots(double a, double b, double c, double d) {
  if (a == 0.0) throw std::invalid_argument("real_cubic_roots: leading coefficient is zero");
  const double B = b / a, C = c / a, D = d / a;
  // x = t - B/3 gives t^3 + p t + q = 0.
  const double p = C - B * B / 3.0;
  const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
  const double shift = -B / 3.0;
  std::vector<double> roots;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);
  if (p < 0.0 && disc >= 0.0) {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift);
  } else {
    const double s = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
    roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) + shift);
  }
  auto poly = [&](double x) { return ((a * x + b) * x + c) * x + d; };
  auto dpoly = [&](double x) { return (3.0 * a * x + 2.0 * b) * x + c; };
  for (auto& x : roots)
    for (int it = 0; it < 8; ++it) {
      const double dp = dpoly(x);
      if (dp == 0.0) break;
      const double step = poly(x) / dp;
      x -= step;
      if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(x))) break;
    }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool LTAggregationConstants::practical_hypothesis() const noexcept {
  return flow_diameter > 0.0 && flow_diameter < margin * margin / (8.0 * kappa0);
}

double LTAggregationConstants::residual(double x) const noexcept {
  return -2.0 * kappa0 * x * x + margin * x - flow_diameter;
}

LTAggregationConstants lt_aggregation_constants(double kappa0, double kappa_hat0,
                                                double centroid_norm, double flow_diameter) {
  if (!(kappa0 > 0.0)) throw ConfigurationError("lt_aggregation_constants: kappa0 must be > 0");
  LTAggregationConstants c;
  c.kappa0 = kappa0;
  c.kappa_hat0 = kappa_hat0;
  c.centroid_norm = centroid_norm;
  c.flow_diameter = flow_diameter;
  c.margin = kappa0 - 2.0 * kappa_hat0 * centroid_norm;
  const double disc = c.margin * c.margin - 8.0 * kappa0 * flow_diameter;
  if (disc < 0.0) {
    c.eta1 = c.eta2 = kNaN;
    return c;
  }
  const double sq = std::sqrt(disc);
  // Cancellation-free forms of (margin -+ sq) / (4 kappa0).
  c.eta2 = (c.margin + sq) / (4.0 * kappa0);
  c.eta1 = c.margin + sq > 0.0 ? 2.0 * flow_diameter / (c.margin + sq) : kNaN;
  return c;
}

double UnitaryReductionConstants::complete_threshold() const { return std::sqrt(2.0 * B / A); }

bool UnitaryReductionConstants::practical_hypothesis() const {
  return A > 0.0 && B > 0.0 && kappa1 > flow_diameter * std::sqrt(27.0 * A / (32.0 * B * B * B)) &&
         flow_diameter > 0.0;
}

double UnitaryReductionConstants::residual(double x) const noexcept {
  return A * x * x * x - 2.0 * B * x + flow_diameter / kappa1;
}

UnitaryReductionConstants unitary_reduction_constants(const RVec& lambda_sq, double flow_diameter,
                                                      double kappa1) {
  if (lambda_sq.size() == 0) throw DimensionError("unitary_reduction_constants: empty spectrum");
  if (!(kappa1 > 0.0)) throw ConfigurationError("unitary_reduction_constants: kappa1 must be > 0");
  UnitaryReductionConstants c;
  const double mean = lambda_sq.mean();
  const double spread = (lambda_sq.array() - mean).abs().maxCoeff();
  c.A = mean + spread;
  c.B = mean - spread;
  c.flow_diameter = flow_diameter;
  c.kappa1 = kappa1;
  c.alpha2 = c.A > 0.0 ? largest_positive(real_cubic_roots(c.A, 0.0, -2.0 * c.B, flow_diameter / kappa1))
                       : kNaN;
  return c;
}

double alpha_nm(int n, int m) {
  if (n <= 0 || m <= 0) throw ConfigurationError("alpha_nm: n and m must be positive");
  const double a = 3.0 * n + 4.0, b = 12.0 * n + 27.0;
  const double g = m - 4.0 * std::sqrt(double(n));
  return (-b + std::sqrt(b * b + 48.0 * g * a)) / (4.0 * a);
}

double alpha_nm_polynomial(int n, int m, double s) {
  return (2.0 * n + 8.0 / 3.0) * s * s + (4.0 * n + 9.0) * s - 2.0 * (m - 4.0 * std::sqrt(double(n)));
}

double HeterogeneousSLConstants::residual(double x) const noexcept {
  return 2.0 * x * x * x - x * x + 2.0 * potential_diameter / kappa;
}

HeterogeneousSLConstants heterogeneous_sl_constants(double potential_diameter, double kappa) {
  if (!(kappa > 0.0)) throw ConfigurationError("heterogeneous_sl_constants: kappa must be > 0");
  HeterogeneousSLConstants c;
  c.potential_diameter = potential_diameter;
  c.kappa = kappa;
  std::vector<double> pos;
  for (double r : real_cubic_roots(2.0, -1.0, 0.0, 2.0 * potential_diameter / kappa))
    if (r > 0.0) pos.push_back(r);
  c.alpha1 = pos.size() >= 1 ? pos.front() : kNaN;
  c.alpha2 = pos.size() >= 2 ? pos.back() : kNaN;
  return c;
}

bool NetworkStats::cooperative_hypothesis(double initial_diameter) const noexcept {
  return positive && d < am_c && initial_diameter * initial_diameter < 2.0 * (am_c - d) / a_max;
}

NetworkStats network_stats(const RMatrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) throw DimensionError("network_stats: need a square matrix");
  NetworkStats s;
  const auto n = a.rows();
  s.a_max = a.maxCoeff();
  s.positive = (a.array() > 0.0).all();
  s.am_c = a.rowwise().mean().minCoeff();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      s.d = std::max(s.d, (a.row(i) - a.row(j)).cwiseAbs().maxCoeff());
  return s;
}

double bipolar_margin(const CMatrix& h) {
  if (h.rows() != 4 || h.cols() != 4) throw DimensionError("bipolar_margin: need a 4 x 4 matrix");
  auto r = [&](int i, int j) { return h(i - 1, j - 1).real(); };
  return r(1, 3) + r(2, 4) - (2.0 + r(1, 2) + r(1, 4) + r(2, 3) + r(3, 4));
}

bool bipolar_hypothesis(const CMatrix& h) { return bipolar_margin(h) > 0.0; }

}  // namespace lohe
