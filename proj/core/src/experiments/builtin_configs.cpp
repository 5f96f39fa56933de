#include "lohe/experiments/builtin_configs.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace lohe::experiments {

namespace {

using Maker = std::function<json()>;

json ones(std::size_t n) {
  json m = json::array();
  for (std::size_t i = 0; i < n; ++i) m.push_back(json(std::vector<double>(n, 1.0)));
  return m;
}

// Two harmonic-trapped GPL components on [-12, 12] with gaussian data at 2.5 and -5.
json gpl1d(const std::string& name, bool identical, double kappa) {
  json beta = identical ? ones(2) : json{{2.0, 1.0}, {1.0, 0.5}};
  json channels = {"Re_h_1_2", "Im_h_1_2", "D_psi", "xc1_1", "xc1_2", "mass_1", "mass_2", "energy"};
  return {
      {"name", name},
      {"model", "gpl"},
      {"description", std::string(identical ? "identical" : "non-identical") +
                          " two-component 1D GPL run, V_j = pi^2 alpha_j^2 x^2, kappa = " +
                          std::to_string(int(kappa))},
      {"N", 2},
      {"grid", {{"dim", 1}, {"a", -12.0}, {"b", 12.0}, {"M", 512}}},
      {"kappa", kappa},
      {"potential", {{"kind", "harmonic"}, {"alpha", identical ? json{1.0, 1.0} : json{1.0, 2.0}}}},
      {"beta", beta},
      {"initial", {{"kind", "gaussian"}, {"centers", {2.5, -5.0}}, {"widths", {1.0}}}},
      {"scheme", {{"dt", 2e-4}, {"t_end", 10.0}, {"sample_every", 50}}},
      {"channels", channels},
  };
}

// Six identical 2D GPL components, kappa = 20, at the given centers.
json gpl2d(const std::string& name, const std::string& what,
           const std::vector<std::array<double, 2>>& centers) {
  json cs = json::array();
  for (const auto& c : centers) cs.push_back({c[0], c[1]});
  std::vector<std::string> channels = {"D_psi", "xcbar1", "xcbar2"};
  for (int j = 1; j <= 6; ++j) {
    channels.push_back("xc1_" + std::to_string(j));
    channels.push_back("xc2_" + std::to_string(j));
  }
  for (const char* c : {"crossratio_1256", "crossratio_2456", "crossratio_3456"}) channels.push_back(c);
  for (const char* c : {"h_gap", "Re_h_1_2", "Re_h_2_4", "Re_h_3_6", "mass_1", "energy"}) channels.push_back(c);
  return {
      {"name", name},
      {"model", "gpl"},
      {"description", "six identical 2D GPL components, kappa = 20, " + what},
      {"N", 6},
      {"grid", {{"dim", 2}, {"a", -12.0}, {"b", 12.0}, {"M", 256}}},
      {"kappa", 20.0},
      {"potential", {{"kind", "harmonic"}, {"alpha", std::vector<double>(6, 1.0)}}},
      {"beta", ones(6)},
      {"initial", {{"kind", "gaussian"}, {"centers", cs}, {"widths", {1.0}}}},
      {"scheme", {{"dt", 2e-4}, {"t_end", 1.6}, {"sample_every", 25}}},
      {"snapshots", {{"times", {0.0, 0.1, 0.2, 0.4, 0.8, 1.6}}, {"components", {1}}}},
      {"channels", channels},
  };
}

std::vector<std::array<double, 2>> ring(double radius, double step, double offset_angle,
                                        std::array<double, 2> shift, int first) {
  std::vector<std::array<double, 2>> c;
  for (int j = 1; j <= 6; ++j) {
    const double t = (j - first) * step + offset_angle;
    c.push_back({shift[0] + radius * std::cos(t), shift[1] + radius * std::sin(t)});
  }
  return c;
}

const std::map<std::string, Maker>& registry() {
  static const std::map<std::string, Maker> r = [] {
    constexpr double pi = std::numbers::pi;
    std::map<std::string, Maker> m;
    m["gpl1d_identical_k0"] = [] { return gpl1d("gpl1d_identical_k0", true, 0.0); };
    m["gpl1d_identical_k2"] = [] { return gpl1d("gpl1d_identical_k2", true, 2.0); };
    m["gpl1d_identical_k20"] = [] { return gpl1d("gpl1d_identical_k20", true, 20.0); };
    m["gpl1d_nonidentical_k0"] = [] { return gpl1d("gpl1d_nonidentical_k0", false, 0.0); };
    m["gpl1d_nonidentical_k2"] = [] { return gpl1d("gpl1d_nonidentical_k2", false, 2.0); };
    m["gpl1d_nonidentical_k10"] = [] { return gpl1d("gpl1d_nonidentical_k10", false, 10.0); };
    m["gpl1d_nonidentical_k20"] = [] { return gpl1d("gpl1d_nonidentical_k20", false, 20.0); };
    m["gpl2d_hexagon"] = [] {
      return gpl2d("gpl2d_hexagon", "centers on a regular hexagon of radius 6 about the origin",
                   ring(6.0, pi / 3.0, 0.0, {0.0, 0.0}, 1));
    };
    m["gpl2d_offset_hexagon"] = [] {
      return gpl2d("gpl2d_offset_hexagon", "centers on a radius-4 hexagon about (2, 2)",
                   ring(4.0, pi / 3.0, -pi / 12.0, {2.0, 2.0}, 0));
    };
    m["gpl2d_half_decagon"] = [] {
      return gpl2d("gpl2d_half_decagon", "centers at six consecutive vertices of a radius-6 decagon",
                   ring(6.0, pi / 5.0, 0.0, {0.0, 0.0}, 1));
    };
    m["gpl2d_scattered"] = [] {
      return gpl2d("gpl2d_scattered", "scattered centers",
                   {{3.4707, 2.7526}, {-0.8931, 1.9951}, {0.1809, -1.1538},
                    {0.0937, -5.8995}, {-2.9235, -2.4171}, {-3.6423, 4.3714}});
    };
    m["lt_norm_conservation"] = [] {
      return json{
          {"name", "lt_norm_conservation"},
          {"model", "lt"},
          {"description", "rank-2 Lohe tensors, heterogeneous flows, no reprojection"},
          {"seed", 0},
          {"N", 5},
          {"shape", {3, 3}},
          {"coupling", {{"kappa0", 1.0}, {"kappa_hat0", 1.0}}},
          {"free_flow", {{"kind", "random"}, {"scale", 1.0}, {"diameter", 1.0}}},
          {"initial", {{"kind", "random"}}},
          {"integrator", {{"dt", 1e-3}, {"t_end", 10.0}, {"sample_every", 100}}},
          {"channels", {"norm_1", "norm_2", "norm_3", "norm_4", "norm_5", "D_T"}},
      };
    };
    m["lt_homogeneous_decay"] = [] {
      return json{
          {"name", "lt_homogeneous_decay"},
          {"model", "lt"},
          {"description", "rank-2 Lohe tensors with one shared free flow and small initial diameter"},
          {"seed", 0},
          {"N", 4},
          {"shape", {2, 2}},
          {"coupling", {{"kappa0", 1.0}, {"kappa_hat0", 0.1}}},
          {"free_flow", {{"kind", "random"}, {"scale", 1.0}, {"diameter", 0.0}}},
          {"initial", {{"kind", "random"}, {"diameter", {0.2, 0.3}}}},
          {"integrator", {{"dt", 1e-3}, {"t_end", 25.0}, {"sample_every", 10}}},
          {"channels", {"D_T", "rho", "V_func"}},
      };
    };
    m["lt_practical_aggregation"] = [] {
      return json{
          {"name", "lt_practical_aggregation"},
          {"model", "lt"},
          {"description", "rank-2 Lohe tensors with distinct free flows, D(A) = 0.5"},
          {"seed", 1},
          {"N", 4},
          {"shape", {2, 2}},
          {"coupling", {{"kappa0", 10.0}, {"kappa_hat0", 1.0}}},
          {"free_flow", {{"kind", "random"}, {"scale", 1.0}, {"diameter", 0.5}}},
          {"initial", {{"kind", "random"}, {"diameter", {0.2, 0.3}}}},
          {"integrator", {{"dt", 1e-3}, {"t_end", 5.0}, {"reproject", true}, {"sample_every", 10}}},
          {"channels", {"D_T", "rho"}},
      };
    };
    m["lt_separable_sds"] = [] {
      return json{
          {"name", "lt_separable_sds"},
          {"model", "lt"},
          {"description", "rank-2 Lohe tensors started at u (x) v, co-integrated with the double-sphere flow"},
          {"seed", 3},
          {"N", 5},
          {"shape", {3, 4}},
          {"coupling", {{"kappa", 1.0}}},
          {"free_flow", {{"kind", "random"}, {"scale", 1.0}, {"diameter", 0.5}}},
          {"initial", {{"kind", "separable-lift"}, {"factor", "sds"}, {"factor_shape", {3, 4}}}},
          {"integrator", {{"dt", 1e-3}, {"t_end", 5.0}, {"sample_every", 50}}},
          {"channels", {"lift_defect", "D_T", "norm_1"}},
      };
    };
    m["lt_separable_sdm"] = [] {
      return json{
          {"name", "lt_separable_sdm"},
          {"model", "lt"},
          {"description", "rank-4 Lohe tensors started at U (x) V, co-integrated with the double-matrix flow"},
          {"seed", 4},
          {"N", 4},
          {"shape", {2, 2, 2, 2}},
          {"coupling", {{"kappa1", 1.0}, {"kappa2", 0.5}}},
          {"free_flow", {{"kind", "random"}, {"scale", 1.0}, {"diameter", 0.5}}},
          {"initial", {{"kind", "separable-lift"}, {"factor", "sdm"}, {"factor_shape", {2, 2, 2, 2}}}},
          {"integrator", {{"dt", 1e-3}, {"t_end", 5.0}, {"sample_every", 50}}},
          {"channels", {"lift_defect", "D_T", "norm_1"}},
      };
    };
    m["kuramoto_sync"] = [] {
      return json{
          {"name", "kuramoto_sync"},
          {"model", "kuramoto"},
          {"description", "plain Kuramoto oscillators with spread natural frequencies"},
          {"seed", 5},
          {"N", 8},
          {"coupling", {{"kappa", 2.0}}},
          {"free_flow", {{"kind", "random"}, {"scale", 0.0}, {"diameter", 0.5}}},
          {"initial", {{"kind", "random"}}},
          {"integrator", {{"dt", 1e-2}, {"t_end", 20.0}, {"sample_every", 10}}},
      };
    };
    m["sds_gradient_flow"] = [] {
      return json{
          {"name", "sds_gradient_flow"},
          {"model", "sds"},
          {"description", "swarm double sphere without free flows; E_s decreases"},
          {"seed", 6},
          {"N", 6},
          {"shape", {3, 4}},
          {"coupling", {{"kappa", 1.0}}},
          {"free_flow", {{"kind", "zero"}}},
          {"initial", {{"kind", "random"}}},
          {"integrator", {{"dt", 1e-2}, {"t_end", 10.0}, {"sample_every", 10}}},
      };
    };
    m["unitary_pair_aggregation"] = [] {
      return json{
          {"name", "unitary_pair_aggregation"},
          {"model", "unitary_pair"},
          {"description", "pairs of 2x2 and 3x3 unitaries with one shared hamiltonian pair"},
          {"seed", 7},
          {"N", 4},
          {"shape", {2, 3}},
          {"coupling", {{"kappa", 1.0}}},
          {"free_flow", {{"kind", "random"}, {"scale", 1.0}, {"diameter", 0.0}}},
          {"initial", {{"kind", "random"}, {"diameter", {0.2, 0.4}}}},
          {"integrator", {{"dt", 1e-3}, {"t_end", 10.0}, {"reproject", true}, {"sample_every", 50}}},
      };
    };
    m["sl_two_oscillators"] = [] {
      return json{
          {"name", "sl_two_oscillators"},
          {"model", "sl"},
          {"description", "two SL oscillators in V = x^2 whose potentials differ by a constant nu = 2, kappa = 1"},
          {"N", 2},
          {"grid", {{"dim", 1}, {"a", -12.0}, {"b", 12.0}, {"M", 256}}},
          {"kappa", 1.0},
          {"potential", {{"kind", "quadratic"}, {"scale", 1.0}, {"shifts", {1.0, -1.0}}}},
          {"initial", {{"kind", "gaussian"}, {"centers", {-1.0, 1.0}}, {"widths", {1.0}}}},
          {"scheme", {{"dt", 2e-4}, {"t_end", 12.0}, {"sample_every", 10}}},
          {"channels", {"Re_h_1_2", "Im_h_1_2", "abs_h_1_2", "D_psi"}},
      };
    };
    m["sl_identical_decay"] = [] {
      return json{
          {"name", "sl_identical_decay"},
          {"model", "sl"},
          {"description", "three identical SL oscillators in V = x^2 with nearby gaussian data, kappa = 2"},
          {"N", 3},
          {"grid", {{"dim", 1}, {"a", -12.0}, {"b", 12.0}, {"M", 256}}},
          {"kappa", 2.0},
          {"potential", {{"kind", "quadratic"}, {"scale", 1.0}}},
          {"initial", {{"kind", "gaussian"}, {"centers", {-0.2, 0.0, 0.2}}, {"widths", {1.0}}}},
          {"scheme", {{"dt", 2e-4}, {"t_end", 5.0}, {"sample_every", 50}}},
          {"channels", {"D_psi", "rho", "Re_h_1_2", "Re_h_1_3"}},
      };
    };
    m["sl_standing_wave"] = [] {
      return json{
          {"name", "sl_standing_wave"},
          {"model", "sl"},
          {"description", "perturbed aggregated standing wave built on the k = 2 Hermite function"},
          {"seed", 8},
          {"N", 3},
          {"grid", {{"dim", 1}, {"a", -12.0}, {"b", 12.0}, {"M", 256}}},
          {"kinetic", 1.0},
          {"kappa", 1.0},
          {"potential", {{"kind", "quadratic"}, {"scale", 1.0}}},
          {"initial", {{"kind", "hermite"}, {"family", "aggregated"}, {"k", 2}, {"perturbation", 1e-2}}},
          {"scheme", {{"dt", 1e-3}, {"t_end", 10.0}, {"sample_every", 10}}},
          {"channels", {"D_psi", "rho", "mass_1", "energy"}},
      };
    };
    return m;
  }();
  return r;
}

}  // namespace

std::vector<std::string> builtin_config_names() {
  std::vector<std::string> v;
  for (const auto& [k, _] : registry()) v.push_back(k);
  return v;
}

json builtin_config(const std::string& name) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw ConfigError({"unknown builtin config \"" + name + "\""});
  return it->second();
}

}  // namespace lohe::experiments
