#include "lohe/experiments/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace lohe::experiments {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string join_lines(const std::vector<std::string>& lines) {
  std::string s = "invalid configuration";
  for (const auto& l : lines) s += "\n  " + l;
  return s;
}

std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Collects schema problems instead of stopping at the first one.
class Checker {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

  // Object member or nullptr; records a problem if required and missing.
  const json* member(const json& obj, const std::string& path, const std::string& key,
                     bool required) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(child(path, key), "required key is missing");
      return nullptr;
    }
    return &*it;
  }

  const json* object(const json& obj, const std::string& path, const std::string& key,
                     bool required) {
    const json* v = member(obj, path, key, required);
    if (v && !v->is_object()) {
      fail(child(path, key), "expected an object");
      return nullptr;
    }
    return v;
  }

  double number(const json& obj, const std::string& path, const std::string& key,
                std::optional<double> fallback, double lo = -kInf, double hi = kInf,
                bool strict_lo = false) {
    const json* v = member(obj, path, key, !fallback.has_value());
    if (!v) return fallback.value_or(0.0);
    return check_number(*v, child(path, key), lo, hi, strict_lo).value_or(fallback.value_or(0.0));
  }

  std::optional<double> check_number(const json& v, const std::string& path, double lo, double hi,
                                     bool strict_lo) {
    if (!v.is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x) || x < lo || x > hi || (strict_lo && x == lo)) {
      std::ostringstream os;
      os << "value " << x << " outside " << (strict_lo ? "(" : "[") << lo << ", " << hi << "]";
      fail(path, os.str());
      return std::nullopt;
    }
    return x;
  }

  std::size_t count(const json& obj, const std::string& path, const std::string& key,
                    std::optional<std::size_t> fallback, std::size_t lo = 0) {
    const json* v = member(obj, path, key, !fallback.has_value());
    if (!v) return fallback.value_or(0);
    if (!v->is_number_integer() || v->get<long long>() < (long long)lo) {
      fail(child(path, key), "expected an integer >= " + std::to_string(lo));
      return fallback.value_or(lo);
    }
    return v->get<std::size_t>();
  }

  bool boolean(const json& obj, const std::string& path, const std::string& key, bool fallback) {
    const json* v = member(obj, path, key, false);
    if (!v) return fallback;
    if (!v->is_boolean()) {
      fail(child(path, key), "expected true or false");
      return fallback;
    }
    return v->get<bool>();
  }

  std::string string(const json& obj, const std::string& path, const std::string& key,
                     std::optional<std::string> fallback) {
    const json* v = member(obj, path, key, !fallback.has_value());
    if (!v) return fallback.value_or("");
    if (!v->is_string()) {
      fail(child(path, key), "expected a string");
      return fallback.value_or("");
    }
    return v->get<std::string>();
  }

  std::string choice(const json& obj, const std::string& path, const std::string& key,
                     std::optional<std::string> fallback, const std::vector<std::string>& allowed) {
    std::string s = string(obj, path, key, fallback);
    for (const auto& a : allowed)
      if (s == a) return s;
    std::string msg = "unknown value \"" + s + "\"; expected one of";
    for (const auto& a : allowed) msg += " " + a;
    fail(child(path, key), msg);
    return allowed.front();
  }

  std::vector<double> numbers(const json& v, const std::string& path, double lo = -kInf,
                              double hi = kInf) {
    std::vector<double> out;
    if (!v.is_array()) {
      fail(path, "expected an array of numbers");
      return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(check_number(v[i], item(path, i), lo, hi, false).value_or(0.0));
    return out;
  }

  std::vector<std::size_t> sizes(const json& v, const std::string& path, std::size_t lo) {
    std::vector<std::size_t> out;
    if (!v.is_array()) {
      fail(path, "expected an array of integers");
      return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer() || v[i].get<long long>() < (long long)lo) {
        fail(item(path, i), "expected an integer >= " + std::to_string(lo));
        out.push_back(lo);
      } else {
        out.push_back(v[i].get<std::size_t>());
      }
    }
    return out;
  }

  // A complex entry: a number or a [re, im] pair.
  cplx entry(const json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return {v[0].get<double>(), v[1].get<double>()};
    fail(path, "expected a number or a [re, im] pair");
    return {};
  }

  // N x N real matrix given as a scalar (filled) or nested arrays.
  RMatrix square(const json& v, const std::string& path, std::size_t n) {
    RMatrix m = RMatrix::Zero(Eigen::Index(n), Eigen::Index(n));
    if (v.is_number()) {
      m.setConstant(v.get<double>());
      return m;
    }
    if (!v.is_array() || v.size() != n) {
      fail(path, "expected a number or an N x N array (N = " + std::to_string(n) + ")");
      return m;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = numbers(v[i], item(path, i));
      if (row.size() != n) {
        fail(item(path, i), "row must have N entries");
        continue;
      }
      for (std::size_t k = 0; k < n; ++k) m(Eigen::Index(i), Eigen::Index(k)) = row[k];
    }
    return m;
  }

  void unknown_keys(const json& obj, const std::string& path, const std::set<std::string>& known) {
    if (!obj.is_object()) return;
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!known.count(it.key())) fail(child(path, it.key()), "unknown key");
  }
};

std::size_t product(const std::vector<std::size_t>& v) {
  std::size_t p = 1;
  for (auto x : v) p *= x;
  return p;
}

// Number of shape entries each ODE model expects (0 = any positive rank).
std::size_t shape_rank(ModelKind kind) {
  switch (kind) {
    case ModelKind::Sphere:
    case ModelKind::LHS: return 1;
    case ModelKind::Matrix:
    case ModelKind::SDS:
    case ModelKind::UnitaryPair: return 2;
    case ModelKind::SDM: return 4;
    default: return 0;
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::invalid_argument(join_lines(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::LT: return "lt";
    case ModelKind::Kuramoto: return "kuramoto";
    case ModelKind::Sphere: return "sphere";
    case ModelKind::LHS: return "lhs";
    case ModelKind::Matrix: return "matrix";
    case ModelKind::SDS: return "sds";
    case ModelKind::SDM: return "sdm";
    case ModelKind::UnitaryPair: return "unitary_pair";
    case ModelKind::SL: return "sl";
    case ModelKind::GPL: return "gpl";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (auto k : {ModelKind::LT, ModelKind::Kuramoto, ModelKind::Sphere, ModelKind::LHS,
                 ModelKind::Matrix, ModelKind::SDS, ModelKind::SDM, ModelKind::UnitaryPair,
                 ModelKind::SL, ModelKind::GPL})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

bool is_wave_model(ModelKind kind) { return kind == ModelKind::SL || kind == ModelKind::GPL; }

std::uint64_t ExperimentConfig::require_seed() const {
  if (!seed) throw ConfigError({"seed: required for random initialization or free flows"});
  return *seed;
}

std::vector<std::string> coupling_keys(ModelKind kind) {
  switch (kind) {
    case ModelKind::LT: return {"kappa0", "kappa_hat0"};
    case ModelKind::Kuramoto: return {"kappa"};
    case ModelKind::Sphere: return {"kappa0"};
    case ModelKind::LHS: return {"kappa0", "kappa1"};
    case ModelKind::Matrix: return {"kappa1", "kappa2"};
    case ModelKind::SDS: return {"kappa"};
    case ModelKind::SDM: return {"kappa1", "kappa2"};
    case ModelKind::UnitaryPair: return {"kappa"};
    default: return {};
  }
}

namespace {

void parse_flow(Checker& c, const json& doc, FlowSpec& flow, bool& needs_seed) {
  const json* f = c.object(doc, "", "free_flow", false);
  if (!f) return;
  c.unknown_keys(*f, "free_flow", {"kind", "scale", "diameter"});
  const auto kind = c.choice(*f, "free_flow", "kind", "zero", {"zero", "random"});
  if (kind == "random") {
    flow.kind = FlowSpec::Kind::Random;
    flow.scale = c.number(*f, "free_flow", "scale", 1.0, 0.0);
    flow.diameter = c.number(*f, "free_flow", "diameter", 0.0, 0.0);
    needs_seed = true;
  }
}

void parse_ode(Checker& c, const json& doc, ExperimentConfig& cfg, bool& needs_seed) {
  OdeSpec& o = cfg.ode;
  o.count = c.count(doc, "", "N", std::nullopt, 1);

  const std::size_t rank = shape_rank(cfg.model);
  if (cfg.model == ModelKind::Kuramoto) {
    o.shape = {1};
    if (doc.contains("shape")) c.fail("shape", "kuramoto phases take no shape");
  } else if (const json* s = c.member(doc, "", "shape", true)) {
    o.shape = c.sizes(*s, "shape", 1);
    if (o.shape.empty()) c.fail("shape", "needs at least one dimension");
    if (rank && o.shape.size() != rank)
      c.fail("shape", std::string(to_string(cfg.model)) + " needs " + std::to_string(rank) +
                          " dimensions");
  }

  // Coupling. A separable lift takes the factor model's constants.
  std::optional<ModelKind> lift_factor;
  if (cfg.model == ModelKind::LT && doc.contains("initial") && doc["initial"].is_object() &&
      doc["initial"].value("kind", "") == "separable-lift")
    lift_factor = doc["initial"].value("factor", "") == "sdm" ? ModelKind::SDM : ModelKind::SDS;
  const json* cp = c.object(doc, "", "coupling", true);
  if (cp) {
    if (cfg.model == ModelKind::LT && !lift_factor && cp->contains("patterns")) {
      c.unknown_keys(*cp, "coupling", {"patterns"});
      o.coupling = c.numbers((*cp)["patterns"], "coupling.patterns", 0.0);
      const std::size_t want = std::size_t(1) << o.shape.size();
      if (o.coupling.size() != want)
        c.fail("coupling.patterns", "need 2^m = " + std::to_string(want) + " values");
    } else {
      const auto keys = coupling_keys(lift_factor.value_or(cfg.model));
      std::set<std::string> known(keys.begin(), keys.end());
      if (cfg.model == ModelKind::LT && !lift_factor) known.insert("patterns");
      c.unknown_keys(*cp, "coupling", known);
      std::vector<double> vals;
      for (const auto& k : keys) vals.push_back(c.number(*cp, "coupling", k, std::nullopt, 0.0));
      if (cfg.model == ModelKind::LT && !lift_factor) {
        // kappa_hat0 is spread evenly over the non-zero patterns.
        const std::size_t n = std::size_t(1) << o.shape.size();
        o.coupling.assign(n, vals[1] / double(n - 1));
        o.coupling[0] = vals[0];
      } else {
        o.coupling = vals;
      }
    }
  }

  parse_flow(c, doc, o.flow, needs_seed);

  // Initial data.
  const json* in = c.object(doc, "", "initial", true);
  if (in) {
    auto& init = o.initial;
    const auto kind =
        c.choice(*in, "initial", "kind", std::nullopt, {"random", "explicit", "separable-lift"});
    if (kind == "random") {
      c.unknown_keys(*in, "initial", {"kind", "diameter", "real"});
      needs_seed = true;
      init.kind = OdeInitialSpec::Kind::Random;
      init.real = c.boolean(*in, "initial", "real", false);
      if (const json* d = c.member(*in, "initial", "diameter", false)) {
        const auto v = c.numbers(*d, "initial.diameter", 0.0);
        if (v.size() != 2 || !(v[0] < v[1]) || !(v[0] > 0.0))
          c.fail("initial.diameter", "expected [lo, hi] with 0 < lo < hi");
        else
          init.diameter = std::array<double, 2>{v[0], v[1]};
      }
    } else if (kind == "explicit") {
      c.unknown_keys(*in, "initial", {"kind", "states"});
      init.kind = OdeInitialSpec::Kind::Explicit;
      const json* st = c.member(*in, "initial", "states", true);
      if (st) {
        if (!st->is_array() || st->size() != o.count) {
          c.fail("initial.states", "expected N = " + std::to_string(o.count) + " state arrays");
        } else {
          for (std::size_t j = 0; j < st->size(); ++j) {
            const std::string p = item("initial.states", j);
            CVector v;
            if (!(*st)[j].is_array()) {
              c.fail(p, "expected an array of entries");
            } else {
              for (std::size_t i = 0; i < (*st)[j].size(); ++i)
                v.push_back(c.entry((*st)[j][i], item(p, i)));
            }
            init.states.push_back(std::move(v));
          }
        }
      }
    } else {
      c.unknown_keys(*in, "initial", {"kind", "factor", "factor_shape", "diameter"});
      needs_seed = true;
      init.kind = OdeInitialSpec::Kind::SeparableLift;
      if (cfg.model != ModelKind::LT) c.fail("initial.kind", "separable-lift is an lt initializer");
      const auto f = c.choice(*in, "initial", "factor", std::nullopt, {"sds", "sdm"});
      init.factor = f == "sdm" ? ModelKind::SDM : ModelKind::SDS;
      if (const json* fs = c.member(*in, "initial", "factor_shape", true))
        init.factor_shape = c.sizes(*fs, "initial.factor_shape", 1);
      const std::size_t want = init.factor == ModelKind::SDS ? 2 : 4;
      if (init.factor_shape.size() != want)
        c.fail("initial.factor_shape", "needs " + std::to_string(want) + " dimensions");
      else if (init.factor_shape != o.shape)
        c.fail("shape", "must equal initial.factor_shape for a separable lift");
      if (const json* d = c.member(*in, "initial", "diameter", false)) {
        const auto v = c.numbers(*d, "initial.diameter", 0.0);
        if (v.size() != 2 || !(v[0] < v[1]) || !(v[0] > 0.0))
          c.fail("initial.diameter", "expected [lo, hi] with 0 < lo < hi");
        else
          init.diameter = std::array<double, 2>{v[0], v[1]};
      }
    }
  }

  // Integrator.
  const json* ig = c.object(doc, "", "integrator", true);
  if (ig) {
    c.unknown_keys(*ig, "integrator", {"dt", "t_end", "reproject", "sample_every"});
    auto& it = o.integrator;
    it.dt = c.number(*ig, "integrator", "dt", std::nullopt, 0.0, kInf, true);
    it.t_end = c.number(*ig, "integrator", "t_end", std::nullopt, 0.0, kInf, true);
    it.reproject = c.boolean(*ig, "integrator", "reproject", false);
    it.sample_every = c.count(*ig, "integrator", "sample_every", 1, 1);
    if (it.dt > it.t_end) c.fail("integrator.dt", "must not exceed t_end");
  }

  // Block sizes of explicit states.
  if (o.initial.kind == OdeInitialSpec::Kind::Explicit && !o.shape.empty()) {
    std::size_t block = 0;
    const auto& s = o.shape;
    switch (cfg.model) {
      case ModelKind::SDS: block = s[0] + s[1]; break;
      case ModelKind::SDM: block = s[0] * s[1] + s[2] * s[3]; break;
      case ModelKind::UnitaryPair: block = s[0] * s[0] + s[1] * s[1]; break;
      default: block = product(s);
    }
    for (std::size_t j = 0; j < o.initial.states.size(); ++j)
      if (o.initial.states[j].size() != block)
        c.fail(item("initial.states", j), "expected " + std::to_string(block) + " entries");
  }
}

void parse_wave(Checker& c, const json& doc, ExperimentConfig& cfg, bool& needs_seed) {
  WaveSpec& w = cfg.wave;
  w.count = c.count(doc, "", "N", std::nullopt, 1);
  const std::size_t n = w.count;

  if (const json* g = c.object(doc, "", "grid", true)) {
    c.unknown_keys(*g, "grid", {"dim", "a", "b", "M"});
    const std::size_t dim = c.count(*g, "grid", "dim", 1, 1);
    Axis ax;
    ax.a = c.number(*g, "grid", "a", -12.0);
    ax.b = c.number(*g, "grid", "b", 12.0);
    ax.M = c.count(*g, "grid", "M", std::nullopt, 8);
    if (!(ax.b > ax.a)) c.fail("grid.b", "must exceed grid.a");
    if (ax.M % 2) c.fail("grid.M", "must be even");
    if (dim > 2) c.fail("grid.dim", "only 1 and 2 dimensions are supported");
    if (c.errors.empty()) w.grid = dim == 2 ? Grid(ax, ax) : Grid(ax);
  }

  w.kinetic = c.number(doc, "", "kinetic", 0.5, 0.0, kInf, true);
  w.kappa = c.number(doc, "", "kappa", std::nullopt, 0.0);

  if (const json* p = c.object(doc, "", "potential", false)) {
    c.unknown_keys(*p, "potential", {"kind", "scale", "alpha", "shifts"});
    auto& pot = w.potential;
    const auto kind = c.choice(*p, "potential", "kind", std::nullopt, {"zero", "quadratic", "harmonic"});
    pot.kind = kind == "zero"        ? PotentialSpec::Kind::Zero
               : kind == "quadratic" ? PotentialSpec::Kind::Quadratic
                                     : PotentialSpec::Kind::Harmonic;
    if (pot.kind == PotentialSpec::Kind::Quadratic) pot.scale = c.number(*p, "potential", "scale", 1.0);
    if (pot.kind == PotentialSpec::Kind::Harmonic) {
      if (const json* a = c.member(*p, "potential", "alpha", true)) {
        pot.alpha = c.numbers(*a, "potential.alpha");
        if (pot.alpha.size() != n) c.fail("potential.alpha", "need one value per component");
      }
    }
    if (const json* s = c.member(*p, "potential", "shifts", false)) {
      pot.shifts = c.numbers(*s, "potential.shifts");
      if (pot.shifts.size() != n) c.fail("potential.shifts", "need one value per component");
    }
  }

  if (const json* b = c.member(doc, "", "beta", false)) w.beta = c.square(*b, "beta", n);
  if (cfg.model == ModelKind::SL && w.beta.size() && w.beta.cwiseAbs().maxCoeff() != 0.0)
    c.fail("beta", "the linear sl model takes no nonlinearity; use model gpl");
  if (cfg.model == ModelKind::GPL && !w.beta.size()) c.fail("beta", "gpl requires beta");
  if (const json* a = c.member(doc, "", "adjacency", false)) w.adjacency = c.square(*a, "adjacency", n);

  if (const json* in = c.object(doc, "", "initial", true)) {
    auto& init = w.initial;
    const auto kind = c.choice(*in, "initial", "kind", std::nullopt, {"gaussian", "hermite"});
    if (kind == "gaussian") {
      c.unknown_keys(*in, "initial", {"kind", "centers", "widths"});
      init.kind = WaveInitialSpec::Kind::Gaussian;
      if (const json* cs = c.member(*in, "initial", "centers", true)) {
        if (!cs->is_array() || cs->size() != n) {
          c.fail("initial.centers", "expected N centers");
        } else {
          for (std::size_t j = 0; j < n; ++j) {
            std::array<double, 2> x{0.0, 0.0};
            const auto v = (*cs)[j].is_number() ? std::vector<double>{(*cs)[j].get<double>()}
                                                : c.numbers((*cs)[j], item("initial.centers", j));
            if (v.size() != w.grid.dim() && w.grid.dim())
              c.fail(item("initial.centers", j), "needs one coordinate per grid axis");
            for (std::size_t k = 0; k < std::min<std::size_t>(2, v.size()); ++k) x[k] = v[k];
            for (std::size_t k = 0; k < w.grid.dim() && k < v.size(); ++k)
              if (x[k] < w.grid.axis(k).a || x[k] > w.grid.axis(k).b)
                c.fail(item("initial.centers", j), "center outside the domain");
            init.centers.push_back(x);
          }
        }
      }
      if (const json* ws = c.member(*in, "initial", "widths", false)) {
        init.widths = ws->is_number() ? std::vector<double>{ws->get<double>()}
                                      : c.numbers(*ws, "initial.widths", 0.0);
        if (init.widths.size() != 1 && init.widths.size() != n)
          c.fail("initial.widths", "need one width or one per component");
        for (double a : init.widths)
          if (!(a > 0.0)) c.fail("initial.widths", "widths must be > 0");
      } else {
        init.widths = {1.0};
      }
    } else {
      c.unknown_keys(*in, "initial", {"kind", "family", "k", "perturbation"});
      init.kind = WaveInitialSpec::Kind::Hermite;
      const auto fam = c.choice(*in, "initial", "family", "aggregated", {"aggregated", "bipolar"});
      init.family = fam == "bipolar" ? StandingFamily::Bipolar : StandingFamily::Aggregated;
      init.k = int(c.count(*in, "initial", "k", 0));
      init.perturbation = c.number(*in, "initial", "perturbation", 0.0, 0.0);
      if (init.perturbation > 0.0) needs_seed = true;
      if (w.grid.dim() == 2) c.fail("initial.kind", "hermite standing waves are one-dimensional");
    }
  }

  if (const json* s = c.object(doc, "", "scheme", true)) {
    c.unknown_keys(*s, "scheme",
                   {"dt", "t_end", "sample_every", "cn_tolerance", "cn_max_iterations"});
    w.dt = c.number(*s, "scheme", "dt", std::nullopt, 0.0, kInf, true);
    w.t_end = c.number(*s, "scheme", "t_end", std::nullopt, 0.0, kInf, true);
    w.sample_every = c.count(*s, "scheme", "sample_every", 1, 1);
    w.cn.tolerance = c.number(*s, "scheme", "cn_tolerance", 1e-12, 0.0, kInf, true);
    w.cn.max_iterations = int(c.count(*s, "scheme", "cn_max_iterations", 100, 1));
    if (w.dt > w.t_end) c.fail("scheme.dt", "must not exceed t_end");
  }

  if (const json* s = c.object(doc, "", "snapshots", false)) {
    c.unknown_keys(*s, "snapshots", {"times", "components"});
    if (const json* t = c.member(*s, "snapshots", "times", true))
      w.snapshot_times = c.numbers(*t, "snapshots.times", 0.0, w.t_end);
    if (const json* comp = c.member(*s, "snapshots", "components", false)) {
      for (auto j : c.sizes(*comp, "snapshots.components", 1)) {
        if (j > n) c.fail("snapshots.components", "component index exceeds N");
        w.snapshot_components.push_back(j - 1);
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) w.snapshot_components.push_back(j);
    }
  }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  Checker c;
  ExperimentConfig cfg;
  if (!doc.is_object()) throw ConfigError({"<root>: expected a JSON object"});
  const std::string model = c.string(doc, "", "model", std::nullopt);
  const auto kind = parse_model_kind(model);
  if (!kind) {
    c.fail("model", "unknown model \"" + model +
                        "\"; expected lt, kuramoto, sphere, lhs, matrix, sds, sdm, "
                        "unitary_pair, sl or gpl");
    throw ConfigError(c.errors);
  }
  cfg.model = *kind;
  cfg.name = c.string(doc, "", "name", std::nullopt);
  cfg.output = c.string(doc, "", "output", cfg.name);
  if (const json* s = c.member(doc, "", "seed", false)) {
    if (!s->is_number_integer() || (!s->is_number_unsigned() && s->get<std::int64_t>() < 0))
      c.fail("seed", "expected a non-negative integer");
    else
      cfg.seed = s->get<std::uint64_t>();
  }
  if (const json* ch = c.member(doc, "", "channels", false)) {
    std::vector<std::string> names;
    if (!ch->is_array()) c.fail("channels", "expected an array of channel names");
    else
      for (std::size_t i = 0; i < ch->size(); ++i) {
        if (!(*ch)[i].is_string()) c.fail(item("channels", i), "expected a string");
        else names.push_back((*ch)[i].get<std::string>());
      }
    cfg.channels = names;
  }

  bool needs_seed = false;
  std::set<std::string> known{"model", "name", "seed", "channels", "output", "description", "N",
                              "initial"};
  if (cfg.is_wave()) {
    known.insert({"grid", "kinetic", "potential", "beta", "adjacency", "kappa", "scheme",
                  "snapshots"});
    parse_wave(c, doc, cfg, needs_seed);
  } else {
    known.insert({"shape", "coupling", "free_flow", "integrator"});
    parse_ode(c, doc, cfg, needs_seed);
  }
  c.unknown_keys(doc, "", known);
  if (needs_seed && !cfg.seed) c.fail("seed", "required for random initialization or free flows");
  if (!c.errors.empty()) throw ConfigError(c.errors);
  cfg.document = doc;
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("<json>: ") + e.what()});
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open file"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace lohe::experiments
