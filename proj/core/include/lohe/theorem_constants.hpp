// Threshold constants appearing in the aggregation estimates: roots of the
// comparison polynomials and the network statistics of SL adjacency matrices.

#pragma once

#include <vector>

#include "lohe/linalg.hpp"

namespace lohe {

// Roots of -2 kappa0 x^2 + margin x = D(A), margin = kappa0 - 2 kappa_hat0 ||Tc0||_F.
struct LTAggregationConstants {
  double kappa0 = 0.0;
  double kappa_hat0 = 0.0;
  double centroid_norm = 0.0;  // ||Tc0||_F
  double flow_diameter = 0.0;  // D(A)
  double margin = 0.0;
  double eta1 = 0.0;  // smaller root (NaN when no real roots)
  double eta2 = 0.0;  // larger root
  // Decay-rate bracket [margin, kappa0 + 2 kappa_hat0 ||Tc0||] for homogeneous flows.
  double rate_lower() const noexcept { return margin; }
  double rate_upper() const noexcept { return 2.0 * kappa0 - margin; }
  // Largest initial diameter for complete aggregation, margin / (2 kappa0).
  double diameter_threshold() const noexcept { return margin / (2.0 * kappa0); }
  // 0 < D(A) < margin^2 / (8 kappa0).
  bool practical_hypothesis() const noexcept;
  double residual(double x) const noexcept;
};

LTAggregationConstants lt_aggregation_constants(double kappa0, double kappa_hat0,
                                                double centroid_norm, double flow_diameter);

// Constants of the unitary reduction with D = diag(lambda^2):
// A = <lambda^2> + Delta(lambda^2), B = <lambda^2> - Delta(lambda^2), and
// alpha2 the largest positive root of A x^3 - 2 B x + D(B)/kappa1.
struct UnitaryReductionConstants {
  double A = 0.0;
  double B = 0.0;
  double flow_diameter = 0.0;
  double kappa1 = 0.0;
  double alpha2 = 0.0;  // NaN when the cubic has no positive root
  // sqrt(2B/A): initial-diameter threshold for complete aggregation.
  double complete_threshold() const;
  // kappa1 > D(B) sqrt(27 A / (32 B^3)).
  bool practical_hypothesis() const;
  double residual(double x) const noexcept;
};

UnitaryReductionConstants unitary_reduction_constants(const RVec& lambda_sq, double flow_diameter,
                                                      double kappa1);

// Positive root of f(s) = (2n + 8/3) s^2 + (4n + 9) s - 2(m - 4 sqrt n).
double alpha_nm(int n, int m);
double alpha_nm_polynomial(int n, int m, double s);

// Larger positive root of 2x^3 - x^2 + 2 D(V)/kappa (requires kappa > 54 D(V)).
struct HeterogeneousSLConstants {
  double potential_diameter = 0.0;
  double kappa = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  bool hypothesis() const noexcept { return kappa > 54.0 * potential_diameter && potential_diameter > 0.0; }
  double residual(double x) const noexcept;
};

HeterogeneousSLConstants heterogeneous_sl_constants(double potential_diameter, double kappa);

// Statistics of an SL adjacency matrix.
struct NetworkStats {
  double d = 0.0;         // max_{i,j,k} |a_ik - a_jk|
  double am_c = 0.0;      // min_i (1/N) sum_k a_ik
  double a_max = 0.0;     // max a_ij
  bool positive = false;  // all a_ik > 0
  // a > 0, d < am_c and D(Psi0)^2 < 2 (am_c - d) / a_max.
  bool cooperative_hypothesis(double initial_diameter) const noexcept;
};

NetworkStats network_stats(const RMatrix& a);

// 2 + h12 + h14 + h23 + h34 < h13 + h24 (real parts, one-based names).
bool bipolar_hypothesis(const CMatrix& h);
double bipolar_margin(const CMatrix& h);

// Real roots of a x^3 + b x^2 + c x + d, ascending, polished by Newton steps.
std::vector<double> real_cubic_roots(double a, double b, double c, double d);

}  // namespace lohe
