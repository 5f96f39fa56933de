// Declarative experiment configurations (JSON), validated into typed specs.
//
// Every model shares the top-level keys
//   model, name, seed, channels, output
// ODE models (lt, kuramoto, sphere, lhs, matrix, sds, sdm, unitary_pair) add
//   N, shape, coupling, free_flow, initial, integrator
// wave models (sl, gpl) add
//   N, grid, kinetic, potential, beta, adjacency, kappa, initial, scheme, snapshots.
// See README.md for the full key reference.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lohe/grid.hpp"
#include "lohe/integrator.hpp"
#include "lohe/linalg.hpp"
#include "lohe/sl_init.hpp"
#include "lohe/tscn.hpp"

namespace lohe::experiments {

using json = nlohmann::json;

// Schema violation; carries one "path: message" line per problem found.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

enum class ModelKind { LT, Kuramoto, Sphere, LHS, Matrix, SDS, SDM, UnitaryPair, SL, GPL };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);
bool is_wave_model(ModelKind kind);

// Free flows: zero, or a random common flow of entry size `scale` plus
// per-oscillator deviations rescaled so the flow diameter equals `diameter`
// (diameter 0 = one shared flow).
struct FlowSpec {
  enum class Kind { Zero, Random } kind = Kind::Zero;
  double scale = 1.0;
  double diameter = 0.0;
};

struct OdeInitialSpec {
  enum class Kind { Random, Explicit, SeparableLift } kind = Kind::Random;
  // Target interval for the initial diameter; absent = independent random states.
  std::optional<std::array<double, 2>> diameter;
  bool real = false;              // real-valued random states (lt, lhs, matrix)
  std::vector<CVector> states;    // explicit: one flat block per oscillator
  ModelKind factor = ModelKind::SDS;  // separable-lift factor model (sds or sdm)
  std::vector<std::size_t> factor_shape;
};

struct OdeSpec {
  std::size_t count = 0;
  std::vector<std::size_t> shape;
  // Model coupling constants in the order listed by coupling_keys(); for lt,
  // the 2^m pattern values.
  std::vector<double> coupling;
  FlowSpec flow;
  OdeInitialSpec initial;
  IntegratorConfig integrator;
};

struct PotentialSpec {
  // Zero: V_j = shift_j; Quadratic: scale |x|^2 + shift_j;
  // Harmonic: pi^2 alpha_j^2 |x|^2 + shift_j.
  enum class Kind { Zero, Quadratic, Harmonic } kind = Kind::Zero;
  double scale = 1.0;
  std::vector<double> alpha;
  std::vector<double> shifts;  // empty = no shift
};

struct WaveInitialSpec {
  enum class Kind { Gaussian, Hermite } kind = Kind::Gaussian;
  std::vector<std::array<double, 2>> centers;
  std::vector<double> widths;
  StandingFamily family = StandingFamily::Aggregated;
  int k = 0;
  double perturbation = 0.0;  // seeded random bump amplitude (hermite only)
};

struct WaveSpec {
  std::size_t count = 0;
  Grid grid;
  double kinetic = 0.5;
  PotentialSpec potential;
  RMatrix beta;       // 0 x 0 = none
  RMatrix adjacency;  // 0 x 0 = all-to-all
  double kappa = 0.0;
  WaveInitialSpec initial;
  double dt = 2e-4;
  double t_end = 1.0;
  std::size_t sample_every = 1;
  CNOptions cn;
  std::vector<double> snapshot_times;
  std::vector<std::size_t> snapshot_components;  // zero-based
};

struct ExperimentConfig {
  std::string name;
  ModelKind model = ModelKind::LT;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::string>> channels;  // absent = model defaults
  std::string output;                                // file stem; defaults to name
  OdeSpec ode;
  WaveSpec wave;
  json document;  // the validated source document

  bool is_wave() const noexcept { return is_wave_model(model); }
  std::size_t count() const noexcept { return is_wave() ? wave.count : ode.count; }
  // Seed or ConfigError; only called where randomness is required.
  std::uint64_t require_seed() const;
};

// Names of the coupling keys for an ODE model (lt: kappa0, kappa_hat0).
std::vector<std::string> coupling_keys(ModelKind kind);

ExperimentConfig parse_config(const json& doc);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace lohe::experiments
