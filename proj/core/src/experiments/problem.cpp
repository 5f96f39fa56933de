#include "lohe/experiments/problem.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "lohe/diagnostics.hpp"
#include "lohe/hermite.hpp"
#include "lohe/kuramoto.hpp"
#include "lohe/lt_model.hpp"
#include "lohe/matrix_models.hpp"
#include "lohe/random.hpp"
#include "lohe/separable.hpp"
#include "lohe/sl_init.hpp"
#include "lohe/sphere_models.hpp"

namespace lohe::experiments {

namespace {

using Block = CVector;
using BlockGen = std::function<Block(Rng&, double scale)>;
using BlockProject = std::function<void(std::span<cplx>)>;

void normalize(std::span<cplx> s) {
  double n = 0.0;
  for (const auto& z : s) n += std::norm(z);
  n = std::sqrt(n);
  if (n > 0.0)
    for (auto& z : s) z /= n;
}

Block gaussian_block(Rng& rng, std::size_t n, double scale, bool real) {
  Block b(n);
  for (auto& z : b) z = scale * (real ? cplx(rng.normal(), 0.0) : rng.complex_normal());
  return b;
}

Block matrix_block(const CMatrix& m) { return Block(m.data(), m.data() + m.size()); }

Block concat(Block a, const Block& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

double flat_diameter(const std::vector<Block>& blocks) {
  StateViews v;
  for (const auto& b : blocks) v.push_back(b);
  return ensemble_diameter(v);
}

// Random ensemble of blocks. Without a target interval the blocks are
// independent; with one, blocks are project(base + eps * noise_j) with eps
// searched (doubling, then bisection) until the diameter lands in [lo, hi].
std::vector<Block> random_blocks(Rng& rng, std::size_t count, const BlockGen& gen,
                                 const BlockProject& project,
                                 const std::optional<std::array<double, 2>>& target) {
  std::vector<Block> out;
  if (!target) {
    for (std::size_t j = 0; j < count; ++j) {
      out.push_back(gen(rng, 1.0));
      project(out.back());
    }
    return out;
  }
  Block base = gen(rng, 1.0);
  project(base);
  std::vector<Block> noise;
  for (std::size_t j = 0; j < count; ++j) noise.push_back(gen(rng, 1.0));
  auto make = [&](double eps) {
    std::vector<Block> s;
    for (const auto& n : noise) {
      Block b = base;
      for (std::size_t i = 0; i < b.size(); ++i) b[i] += eps * n[i];
      project(b);
      s.push_back(std::move(b));
    }
    return s;
  };
  const double lo = (*target)[0], hi = (*target)[1];
  double a = 0.0, b = 1e-3;
  double d = flat_diameter(make(b));
  int doublings = 0;
  while (d < lo && doublings++ < 80) {
    a = b;
    b *= 2.0;
    d = flat_diameter(make(b));
  }
  if (d < lo)
    throw ConfigError({"initial.diameter: interval [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "] is not reachable for this model"});
  for (int it = 0; it < 200 && d > hi; ++it) {
    const double m = 0.5 * (a + b);
    const double dm = flat_diameter(make(m));
    if (dm < lo) a = m;
    else {
      b = m;
      d = dm;
    }
  }
  if (d > hi || d < lo)
    throw ConfigError({"initial.diameter: could not place the diameter in the interval"});
  return make(b);
}

// Common random flow plus deviations rescaled to the requested flow diameter.
std::vector<Block> random_flows(Rng& rng, std::size_t count, const FlowSpec& spec,
                                const BlockGen& gen) {
  if (spec.kind == FlowSpec::Kind::Zero) return {};
  Block common = gen(rng, spec.scale);
  if (spec.diameter == 0.0) return {common};
  std::vector<Block> dev;
  for (std::size_t j = 0; j < count; ++j) dev.push_back(gen(rng, 1.0));
  const double d = flat_diameter(dev);
  if (!(d > 0.0)) throw ConfigError({"free_flow.diameter: needs at least two oscillators"});
  const double s = spec.diameter / d;
  std::vector<Block> out;
  for (const auto& v : dev) {
    Block b = common;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += s * v[i];
    out.push_back(std::move(b));
  }
  return out;
}

CMatrix to_matrix(std::span<const cplx> s, Eigen::Index r, Eigen::Index c) {
  return as_matrix(s, r, c);
}

Block skew_symmetric_block(Rng& rng, Eigen::Index n, double scale) {
  const RMatrix m = random_skew_symmetric(n, rng, scale);
  return matrix_block(m.cast<cplx>());
}

Block skew_hermitian_block(Rng& rng, Eigen::Index n, double scale) {
  return matrix_block(random_skew_hermitian(n, rng, scale));
}

Block block_skew_entries(Rng& rng, const TensorShape& shape, double scale) {
  const auto a = random_block_skew(shape, rng.next(), scale);
  return Block(a.entries().begin(), a.entries().end());
}

std::vector<double> split_indices(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find('_', pos);
    const std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) return {};
    out.push_back(std::stod(tok));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// One-based indices after `prefix`, each within [1, n]; empty on mismatch.
std::vector<std::size_t> indices_after(const std::string& name, const std::string& prefix,
                                       std::size_t want, std::size_t n) {
  if (name.rfind(prefix, 0) != 0) return {};
  const std::string rest = name.substr(prefix.size());
  std::vector<double> v = split_indices(rest);
  // crossratio_1256 style: single digits without separators.
  if (v.size() == 1 && want > 1 && rest.size() == want) {
    v.clear();
    for (char ch : rest) v.push_back(double(ch - '0'));
  }
  if (v.size() != want) return {};
  std::vector<std::size_t> out;
  for (double x : v) {
    if (x < 1 || x > double(n)) return {};
    out.push_back(std::size_t(x) - 1);
  }
  return out;
}

ConfigError unknown_channel(const std::string& name, ModelKind kind) {
  return ConfigError({"channels: \"" + name + "\" is not a channel of model " +
                      std::string(to_string(kind))});
}

// Channels shared by models whose oscillators are single flat blocks.
std::optional<OdeChannel> block_channel(const std::string& name, std::size_t count,
                                        std::size_t block) {
  auto vw = [count, block](std::span<const cplx> y) { return views(y.subspan(0, count * block), block); };
  if (name == "D_T")
    return OdeChannel{name, [vw](double, std::span<const cplx> y) { return ensemble_diameter(vw(y)); }};
  if (name == "rho")
    return OdeChannel{name, [vw](double, std::span<const cplx> y) { return order_parameter_rho(vw(y)); }};
  if (name == "V_func")
    return OdeChannel{name, [vw](double, std::span<const cplx> y) { return variance_functional(vw(y)); }};
  if (auto ix = indices_after(name, "norm_", 1, count); !ix.empty()) {
    const std::size_t j = ix[0];
    return OdeChannel{name, [j, block](double, std::span<const cplx> y) {
                        double s = 0.0;
                        for (const auto& z : y.subspan(j * block, block)) s += std::norm(z);
                        return std::sqrt(s);
                      }};
  }
  for (const char* part : {"Re_h_", "Im_h_"}) {
    if (auto ix = indices_after(name, part, 2, count); !ix.empty()) {
      const bool re = part[0] == 'R';
      const std::size_t i = ix[0], k = ix[1];
      return OdeChannel{name, [=](double, std::span<const cplx> y) {
                          const cplx h = frobenius_inner(y.subspan(i * block, block),
                                                         y.subspan(k * block, block));
                          return re ? h.real() : h.imag();
                        }};
    }
  }
  return std::nullopt;
}

std::vector<std::string> indexed(const std::string& prefix, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t j = 1; j <= n; ++j) v.push_back(prefix + std::to_string(j));
  return v;
}

// Views of the U and V halves of pair-structured blocks.
struct PairLayout {
  std::size_t count, block, first;  // first = length of the U part
  std::vector<CMatrix> part(std::span<const cplx> y, bool second, Eigen::Index r,
                            Eigen::Index c) const {
    std::vector<CMatrix> out;
    for (std::size_t j = 0; j < count; ++j)
      out.push_back(to_matrix(y.subspan(j * block + (second ? first : 0), std::size_t(r * c)), r, c));
    return out;
  }
};

}  // namespace

std::vector<std::string> default_channels(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.count();
  std::vector<std::string> v;
  auto add = [&](std::vector<std::string> more) { v.insert(v.end(), more.begin(), more.end()); };
  switch (cfg.model) {
    case ModelKind::LT:
      v = {"D_T", "rho", "V_func"};
      add(indexed("norm_", n));
      if (cfg.ode.initial.kind == OdeInitialSpec::Kind::SeparableLift) v.push_back("lift_defect");
      break;
    case ModelKind::Kuramoto:
      v = {"D_T", "rho", "potential"};
      add(indexed("theta_", n));
      break;
    case ModelKind::Sphere:
    case ModelKind::LHS:
    case ModelKind::Matrix:
      v = {"D_T", "rho"};
      add(indexed("norm_", n));
      break;
    case ModelKind::SDS: v = {"D_U", "D_V", "E_s"}; break;
    case ModelKind::SDM: v = {"D_U", "D_V", "E_m"}; break;
    case ModelKind::UnitaryPair:
      v = {"D_U", "D_V", "S_U", "S_V", "L_func", "unitarity", "E_m"};
      break;
    case ModelKind::SL:
    case ModelKind::GPL: {
      v = {"D_psi", "rho"};
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
          v.push_back("Re_h_" + std::to_string(i) + "_" + std::to_string(j));
      add(indexed("mass_", n));
      for (std::size_t k = 1; k <= cfg.wave.grid.dim(); ++k)
        add(indexed("xc" + std::to_string(k) + "_", n));
      v.push_back("energy");
      break;
    }
  }
  return v;
}

OdeProblem build_ode_problem(const ExperimentConfig& cfg) {
  if (cfg.is_wave()) throw ConfigError({"model: not an ODE model"});
  const OdeSpec& o = cfg.ode;
  const std::size_t n = o.count;
  const auto& s = o.shape;
  const bool needs_rng = o.initial.kind != OdeInitialSpec::Kind::Explicit ||
                         o.flow.kind == FlowSpec::Kind::Random;
  Rng rng(needs_rng ? cfg.require_seed() : 0);
  const bool real_init = o.initial.real;
  const auto& init = o.initial;

  auto initial_blocks = [&](std::size_t block, const BlockGen& gen, const BlockProject& project) {
    if (init.kind == OdeInitialSpec::Kind::Explicit) {
      std::vector<Block> b = init.states;
      for (auto& x : b)
        if (x.size() != block) throw ConfigError({"initial.states: wrong block length"});
      return b;
    }
    return random_blocks(rng, n, gen, project, init.diameter);
  };
  auto flatten_blocks = [](const std::vector<Block>& b) {
    CVector y;
    for (const auto& x : b) y.insert(y.end(), x.begin(), x.end());
    return y;
  };
  auto pick = [](const std::vector<Block>& flows, std::size_t j) -> const Block& {
    return flows[flows.size() == 1 ? 0 : j];
  };

  OdeProblem p;
  p.count = n;
  std::function<std::optional<OdeChannel>(const std::string&)> resolve;
  const std::vector<std::string> names = cfg.channels.value_or(default_channels(cfg));

  switch (cfg.model) {
    case ModelKind::LT: {
      const TensorShape shape(s);
      const std::size_t block = shape.size();
      if (init.kind == OdeInitialSpec::Kind::SeparableLift) {
        // Co-integrated factor flow: state = [LT blocks, factor blocks].
        LTEnsemble lt;
        std::shared_ptr<SDSModel> sds;
        std::shared_ptr<SDMModel> sdm;
        CVector factor;
        std::size_t fblock = 0;
        if (init.factor == ModelKind::SDS) {
          const auto d1 = Eigen::Index(s[0]), d2 = Eigen::Index(s[1]);
          fblock = s[0] + s[1];
          auto gen = [&](Rng& r, double sc) { return gaussian_block(r, fblock, sc, true); };
          auto proj = [&](std::span<cplx> b) {
            normalize(b.subspan(0, s[0]));
            normalize(b.subspan(s[0]));
          };
          const auto states = random_blocks(rng, n, gen, proj, init.diameter);
          const auto flows = random_flows(rng, n, o.flow, [&](Rng& r, double sc) {
            return concat(skew_symmetric_block(r, d1, sc), skew_symmetric_block(r, d2, sc));
          });
          SDSEnsemble e;
          e.kappa = o.coupling.at(0);
          for (const auto& b : states) {
            e.u.push_back(RVec(d1));
            e.v.push_back(RVec(d2));
            for (Eigen::Index i = 0; i < d1; ++i) e.u.back()[i] = b[i].real();
            for (Eigen::Index i = 0; i < d2; ++i) e.v.back()[i] = b[d1 + i].real();
          }
          for (std::size_t j = 0; j < flows.size(); ++j) {
            e.omega.push_back(to_matrix(std::span(flows[j]).subspan(0, s[0] * s[0]), d1, d1).real());
            e.lambda.push_back(to_matrix(std::span(flows[j]).subspan(s[0] * s[0]), d2, d2).real());
          }
          lt = separable_lift(e);
          sds = std::make_shared<SDSModel>(e);
          factor = flatten(e);
        } else {
          const TensorShape su{s[0], s[1]}, sv{s[2], s[3]};
          fblock = su.size() + sv.size();
          auto gen = [&](Rng& r, double sc) { return gaussian_block(r, fblock, sc, false); };
          auto proj = [&](std::span<cplx> b) {
            normalize(b.subspan(0, su.size()));
            normalize(b.subspan(su.size()));
          };
          const auto states = random_blocks(rng, n, gen, proj, init.diameter);
          const auto flows = random_flows(rng, n, o.flow, [&](Rng& r, double sc) {
            return concat(block_skew_entries(r, su, sc), block_skew_entries(r, sv, sc));
          });
          SDMEnsemble e;
          e.kappa1 = o.coupling.at(0);
          e.kappa2 = o.coupling.at(1);
          for (const auto& b : states) {
            e.U.push_back(to_matrix(std::span(b).subspan(0, su.size()), Eigen::Index(s[0]), Eigen::Index(s[1])));
            e.V.push_back(to_matrix(std::span(b).subspan(su.size()), Eigen::Index(s[2]), Eigen::Index(s[3])));
          }
          for (const auto& f : flows) {
            e.B.emplace_back(su, CVector(f.begin(), f.begin() + long(su.size() * su.size())));
            e.C.emplace_back(sv, CVector(f.begin() + long(su.size() * su.size()), f.end()));
          }
          lt = separable_lift(e);
          sdm = std::make_shared<SDMModel>(e);
          factor = flatten(e);
        }
        auto model = std::make_shared<LTModel>(lt);
        p.block = block;
        p.state = lt.flatten();
        const std::size_t split = p.state.size();
        p.state.insert(p.state.end(), factor.begin(), factor.end());
        p.flow = [model, sds, sdm, split](double, std::span<const cplx> y, std::span<cplx> dy) {
          model->rhs(y.subspan(0, split), dy.subspan(0, split));
          if (sds) sds->rhs(y.subspan(split), dy.subspan(split));
          else sdm->rhs(y.subspan(split), dy.subspan(split));
        };
        const bool is_sds = bool(sds);
        p.projection = [=](std::span<cplx> y) {
          normalize_blocks(y.subspan(0, split), block);
          for (std::size_t j = 0; j < n; ++j) {
            auto f = y.subspan(split + j * fblock, fblock);
            const std::size_t first = is_sds ? s[0] : s[0] * s[1];
            normalize(f.subspan(0, first));
            normalize(f.subspan(first));
          }
        };
        resolve = [=](const std::string& name) -> std::optional<OdeChannel> {
          if (name == "lift_defect") {
            return OdeChannel{name, [=](double, std::span<const cplx> y) {
                                const std::size_t first = is_sds ? s[0] : s[0] * s[1];
                                const TensorShape su = is_sds ? TensorShape{s[0]} : TensorShape{s[0], s[1]};
                                const TensorShape sv = is_sds ? TensorShape{s[1]} : TensorShape{s[2], s[3]};
                                double d = 0.0;
                                for (std::size_t j = 0; j < n; ++j) {
                                  auto f = y.subspan(split + j * fblock, fblock);
                                  const CTensor t(shape, CVector(y.begin() + long(j * block),
                                                                 y.begin() + long((j + 1) * block)));
                                  const CTensor u(su, CVector(f.begin(), f.begin() + long(first)));
                                  const CTensor v(sv, CVector(f.begin() + long(first), f.end()));
                                  d = std::max(d, separability_defect(t, u, v));
                                }
                                return d;
                              }};
          }
          return block_channel(name, n, block);
        };
        break;
      }
      auto gen = [&](Rng& r, double sc) { return gaussian_block(r, block, sc, real_init); };
      const auto states = initial_blocks(block, gen, normalize);
      const auto flows = random_flows(rng, n, o.flow, [&](Rng& r, double sc) {
        return block_skew_entries(r, shape, sc);
      });
      std::vector<BlockSkewTensor> ff;
      for (const auto& f : flows) ff.emplace_back(shape, f);
      auto model = std::make_shared<LTModel>(shape, n, ff, CouplingVector(s.size(), o.coupling));
      p.block = block;
      p.state = flatten_blocks(states);
      p.flow = [model](double, std::span<const cplx> y, std::span<cplx> dy) { model->rhs(y, dy); };
      p.projection = [block](std::span<cplx> y) { normalize_blocks(y, block); };
      resolve = [=](const std::string& name) { return block_channel(name, n, block); };
      break;
    }
    case ModelKind::Kuramoto: {
      auto gen = [](Rng& r, double sc) { return Block{cplx(sc * r.uniform(-std::numbers::pi, std::numbers::pi), 0.0)}; };
      const auto states = initial_blocks(1, gen, [](std::span<cplx>) {});
      const auto flows = random_flows(rng, n, o.flow, [](Rng& r, double sc) {
        return Block{cplx(sc * r.normal(), 0.0)};
      });
      auto st = std::make_shared<KuramotoState>();
      st->theta = RVec::Zero(Eigen::Index(n));
      st->nu = RVec::Zero(Eigen::Index(n));
      for (std::size_t j = 0; j < n && !flows.empty(); ++j) st->nu[Eigen::Index(j)] = pick(flows, j)[0].real();
      st->alpha = RMatrix::Zero(Eigen::Index(n), Eigen::Index(n));
      st->amplitude = RMatrix::Ones(Eigen::Index(n), Eigen::Index(n));
      st->kappa = o.coupling.at(0);
      p.block = 1;
      p.state = flatten_blocks(states);
      p.flow = [st, n](double, std::span<const cplx> y, std::span<cplx> dy) {
        std::vector<double> th(n), d(n);
        for (std::size_t j = 0; j < n; ++j) th[j] = y[j].real();
        kuramoto_rhs(*st, th, d);
        for (std::size_t j = 0; j < n; ++j) dy[j] = d[j];
      };
      p.projection = [](std::span<cplx>) {};
      resolve = [=](const std::string& name) -> std::optional<OdeChannel> {
        if (name == "D_T")
          return OdeChannel{name, [n](double, std::span<const cplx> y) {
                              double d = 0.0;
                              for (std::size_t i = 0; i < n; ++i)
                                for (std::size_t j = 0; j < n; ++j)
                                  d = std::max(d, std::abs(std::remainder(y[i].real() - y[j].real(),
                                                                          2.0 * std::numbers::pi)));
                              return d;
                            }};
        if (name == "rho")
          return OdeChannel{name, [n](double, std::span<const cplx> y) {
                              cplx z{};
                              for (std::size_t j = 0; j < n; ++j) z += std::polar(1.0, y[j].real());
                              return std::abs(z) / double(n);
                            }};
        if (name == "potential")
          return OdeChannel{name, [st, n](double, std::span<const cplx> y) {
                              KuramotoState k = *st;
                              for (std::size_t j = 0; j < n; ++j) k.theta[Eigen::Index(j)] = y[j].real();
                              return kuramoto_potential(k);
                            }};
        if (auto ix = indices_after(name, "theta_", 1, n); !ix.empty()) {
          const std::size_t j = ix[0];
          return OdeChannel{name, [j](double, std::span<const cplx> y) { return y[j].real(); }};
        }
        return std::nullopt;
      };
      break;
    }
    case ModelKind::Sphere:
    case ModelKind::LHS: {
      const bool sphere = cfg.model == ModelKind::Sphere;
      const std::size_t d = s[0];
      auto gen = [&](Rng& r, double sc) { return gaussian_block(r, d, sc, sphere || real_init); };
      const auto states = initial_blocks(d, gen, normalize);
      const auto flows = random_flows(rng, n, o.flow, [&](Rng& r, double sc) {
        return sphere ? skew_symmetric_block(r, Eigen::Index(d), sc)
                      : skew_hermitian_block(r, Eigen::Index(d), sc);
      });
      if (sphere)
        for (const auto& b : states)
          for (const auto& z : b)
            if (z.imag() != 0.0) throw ConfigError({"initial.states: sphere states must be real"});
      std::vector<CMatrix> rot;
      for (const auto& f : flows) rot.push_back(to_matrix(f, Eigen::Index(d), Eigen::Index(d)));
      auto model = std::make_shared<LHSModel>(Eigen::Index(d), n, rot, o.coupling.at(0),
                                              sphere ? 0.0 : o.coupling.at(1));
      p.block = d;
      p.state = flatten_blocks(states);
      p.flow = [model](double, std::span<const cplx> y, std::span<cplx> dy) { model->rhs(y, dy); };
      p.projection = [d](std::span<cplx> y) { normalize_blocks(y, d); };
      resolve = [=](const std::string& name) { return block_channel(name, n, d); };
      break;
    }
    case ModelKind::Matrix: {
      const auto r = Eigen::Index(s[0]), c = Eigen::Index(s[1]);
      const std::size_t block = s[0] * s[1];
      auto gen = [&](Rng& g, double sc) { return gaussian_block(g, block, sc, real_init); };
      const auto states = initial_blocks(block, gen, normalize);
      const auto flows = random_flows(rng, n, o.flow, [&](Rng& g, double sc) {
        return skew_hermitian_block(g, r, sc);
      });
      MatrixEnsemble e;
      for (const auto& b : states) e.states.push_back(to_matrix(b, r, c));
      for (const auto& f : flows) e.left_flows.push_back(to_matrix(f, r, r));
      e.kappa1 = o.coupling.at(0);
      e.kappa2 = o.coupling.at(1);
      auto model = std::make_shared<MatrixLoheModel>(e);
      p.block = block;
      p.state = flatten_blocks(states);
      p.flow = [model](double, std::span<const cplx> y, std::span<cplx> dy) { model->rhs(y, dy); };
      p.projection = [block](std::span<cplx> y) { normalize_blocks(y, block); };
      resolve = [=](const std::string& name) { return block_channel(name, n, block); };
      break;
    }
    case ModelKind::SDS: {
      const auto d1 = Eigen::Index(s[0]), d2 = Eigen::Index(s[1]);
      const std::size_t block = s[0] + s[1];
      auto gen = [&](Rng& g, double sc) { return gaussian_block(g, block, sc, true); };
      auto proj = [&](std::span<cplx> b) {
        normalize(b.subspan(0, s[0]));
        normalize(b.subspan(s[0]));
      };
      const auto states = initial_blocks(block, gen, proj);
      const auto flows = random_flows(rng, n, o.flow, [&](Rng& g, double sc) {
        return concat(skew_symmetric_block(g, d1, sc), skew_symmetric_block(g, d2, sc));
      });
      SDSEnsemble e;
      e.kappa = o.coupling.at(0);
      for (const auto& b : states) {
        RVec u(d1), v(d2);
        for (Eigen::Index i = 0; i < d1; ++i) u[i] = b[std::size_t(i)].real();
        for (Eigen::Index i = 0; i < d2; ++i) v[i] = b[std::size_t(d1 + i)].real();
        e.u.push_back(u);
        e.v.push_back(v);
      }
      for (const auto& f : flows) {
        e.omega.push_back(to_matrix(std::span(f).subspan(0, s[0] * s[0]), d1, d1).real());
        e.lambda.push_back(to_matrix(std::span(f).subspan(s[0] * s[0]), d2, d2).real());
      }
      auto model = std::make_shared<SDSModel>(e);
      p.block = block;
      p.state = flatten(e);
      p.flow = [model](double, std::span<const cplx> y, std::span<cplx> dy) { model->rhs(y, dy); };
      p.projection = [model](std::span<cplx> y) { model->project(y); };
      const std::size_t first = s[0];
      resolve = [=](const std::string& name) -> std::optional<OdeChannel> {
        auto parts = [=](std::span<const cplx> y, bool second) {
          std::vector<RVec> out;
          const auto len = second ? d2 : d1;
          for (std::size_t j = 0; j < n; ++j) {
            RVec x(len);
            for (Eigen::Index i = 0; i < len; ++i) x[i] = y[j * block + (second ? first : 0) + std::size_t(i)].real();
            out.push_back(x);
          }
          return out;
        };
        if (name == "D_U" || name == "D_V") {
          const bool second = name == "D_V";
          return OdeChannel{name, [=](double, std::span<const cplx> y) { return ensemble_diameter(parts(y, second)); }};
        }
        if (name == "E_s")
          return OdeChannel{name, [=](double, std::span<const cplx> y) {
                              return sds_potential(parts(y, false), parts(y, true));
                            }};
        return std::nullopt;
      };
      break;
    }
    case ModelKind::SDM:
    case ModelKind::UnitaryPair: {
      const bool sdm = cfg.model == ModelKind::SDM;
      const auto r1 = Eigen::Index(s[0]), c1 = sdm ? Eigen::Index(s[1]) : r1;
      const auto r2 = sdm ? Eigen::Index(s[2]) : Eigen::Index(s[1]), c2 = sdm ? Eigen::Index(s[3]) : r2;
      const std::size_t first = std::size_t(r1 * c1), block = first + std::size_t(r2 * c2);
      auto gen = [&](Rng& g, double sc) { return gaussian_block(g, block, sc, false); };
      BlockProject proj = [=](std::span<cplx> b) {
        if (sdm) {
          normalize(b.subspan(0, first));
          normalize(b.subspan(first));
        } else {
          as_matrix(b.subspan(0, first), r1, c1) = polar_unitary(to_matrix(b.subspan(0, first), r1, c1));
          as_matrix(b.subspan(first), r2, c2) = polar_unitary(to_matrix(b.subspan(first), r2, c2));
        }
      };
      const auto states = initial_blocks(block, gen, proj);
      PairLayout lay{n, block, first};
      if (sdm) {
        const TensorShape su{s[0], s[1]}, sv{s[2], s[3]};
        const auto flows = random_flows(rng, n, o.flow, [&](Rng& g, double sc) {
          return concat(block_skew_entries(g, su, sc), block_skew_entries(g, sv, sc));
        });
        SDMEnsemble e;
        e.kappa1 = o.coupling.at(0);
        e.kappa2 = o.coupling.at(1);
        for (const auto& b : states) {
          e.U.push_back(to_matrix(std::span(b).subspan(0, first), r1, c1));
          e.V.push_back(to_matrix(std::span(b).subspan(first), r2, c2));
        }
        for (const auto& f : flows) {
          e.B.emplace_back(su, CVector(f.begin(), f.begin() + long(su.size() * su.size())));
          e.C.emplace_back(sv, CVector(f.begin() + long(su.size() * su.size()), f.end()));
        }
        auto model = std::make_shared<SDMModel>(e);
        p.flow = [model](double, std::span<const cplx> y, std::span<cplx> dy) { model->rhs(y, dy); };
        p.projection = [=](std::span<cplx> y) {
          for (std::size_t j = 0; j < n; ++j) proj(y.subspan(j * block, block));
        };
      } else {
        const auto flows = random_flows(rng, n, o.flow, [&](Rng& g, double sc) {
          // Hermitian H = i S for skew-hermitian S.
          Block h = concat(skew_hermitian_block(g, r1, sc), skew_hermitian_block(g, r2, sc));
          for (auto& z : h) z *= kI;
          return h;
        });
        UnitaryPairEnsemble e;
        e.kappa = o.coupling.at(0);
        for (const auto& b : states) {
          e.U.push_back(to_matrix(std::span(b).subspan(0, first), r1, r1));
          e.V.push_back(to_matrix(std::span(b).subspan(first), r2, r2));
        }
        for (const auto& f : flows) {
          e.H.push_back(to_matrix(std::span(f).subspan(0, first), r1, r1));
          e.G.push_back(to_matrix(std::span(f).subspan(first), r2, r2));
        }
        auto model = std::make_shared<UnitaryPairModel>(e);
        p.flow = [model](double, std::span<const cplx> y, std::span<cplx> dy) { model->rhs(y, dy); };
        p.projection = [model](std::span<cplx> y) { model->project(y); };
      }
      p.block = block;
      p.state = flatten_blocks(states);
      resolve = [=](const std::string& name) -> std::optional<OdeChannel> {
        auto U = [=](std::span<const cplx> y) { return lay.part(y, false, r1, c1); };
        auto V = [=](std::span<const cplx> y) { return lay.part(y, true, r2, c2); };
        if (name == "D_U" || name == "D_V") {
          const bool second = name == "D_V";
          return OdeChannel{name, [=](double, std::span<const cplx> y) {
                              return ensemble_diameter(views(second ? V(y) : U(y)));
                            }};
        }
        if (name == "E_m")
          return OdeChannel{name, [=](double, std::span<const cplx> y) {
                              return sdm ? sdm_potential(U(y), V(y)) : unitary_pair_potential(U(y), V(y));
                            }};
        if (!sdm) {
          if (name == "S_U" || name == "S_V" || name == "L_func") {
            return OdeChannel{name, [=](double, std::span<const cplx> y) {
                                const auto l = aggregation_L(U(y), V(y));
                                return name == "S_U" ? l.spread_u : name == "S_V" ? l.spread_v : l.total();
                              }};
          }
          if (name == "unitarity")
            return OdeChannel{name, [=](double, std::span<const cplx> y) {
                                return std::max(unitarity_defect(U(y)), unitarity_defect(V(y)));
                              }};
        }
        return std::nullopt;
      };
      break;
    }
    default: break;
  }

  for (const auto& name : names) {
    auto ch = resolve(name);
    if (!ch) throw unknown_channel(name, cfg.model);
    p.channels.push_back(std::move(*ch));
  }
  return p;
}

SLSystem build_sl_system(const ExperimentConfig& cfg) {
  if (!cfg.is_wave()) throw ConfigError({"model: not a wave model"});
  const WaveSpec& w = cfg.wave;
  SLSystem sys;
  sys.grid = w.grid;
  sys.kinetic = w.kinetic;
  sys.kappa = w.kappa;
  sys.beta = w.beta;
  sys.adjacency = w.adjacency;
  const std::size_t n = w.count;
  if (w.initial.kind == WaveInitialSpec::Kind::Gaussian) {
    sys.fields = gaussian_init(w.initial.centers, w.initial.widths, w.grid);
  } else {
    const WaveField u = hermite_function(HermiteSpec{w.initial.k}, w.grid);
    for (std::size_t j = 0; j < n; ++j) {
      CVector f = u.values;
      if (w.initial.family == StandingFamily::Bipolar && j == 0)
        for (auto& z : f) z = -z;
      sys.fields.push_back(std::move(f));
    }
    if (w.initial.perturbation > 0.0) perturb(sys, w.initial.perturbation, cfg.require_seed());
  }
  const auto& pot = w.potential;
  auto shift = [&](std::size_t j) { return pot.shifts.empty() ? 0.0 : pot.shifts[j]; };
  for (std::size_t j = 0; j < n; ++j) {
    switch (pot.kind) {
      case PotentialSpec::Kind::Zero:
        if (!pot.shifts.empty()) sys.potentials.emplace_back(w.grid.size(), shift(j));
        break;
      case PotentialSpec::Kind::Quadratic:
        sys.potentials.push_back(harmonic_potential(w.grid, pot.scale, shift(j)));
        break;
      case PotentialSpec::Kind::Harmonic: {
        const double a = pot.alpha[j];
        sys.potentials.push_back(
            harmonic_potential(w.grid, std::numbers::pi * std::numbers::pi * a * a, shift(j)));
        break;
      }
    }
  }
  sys.validate();
  return sys;
}

// --- wave channels ---------------------------------------------------------

struct WaveChannels::Impl {
  enum class Kind { Diameter, Rho, ReH, ImH, AbsH, Mass, Center, MeanCenter, Energy, CrossRatio, Gap };
  struct Entry {
    Kind kind;
    std::size_t i = 0, j = 0, k = 0, l = 0;
    std::optional<cplx> initial;
  };
  std::vector<Entry> entries;
  bool needs_h = false;
};

WaveChannels::WaveChannels(std::vector<std::string> names, std::size_t count, std::size_t dim)
    : names_(std::move(names)), impl_(std::make_unique<Impl>()) {
  using K = Impl::Kind;
  auto make = [](K kind, std::size_t i, std::size_t j = 0, std::size_t k = 0, std::size_t l = 0) {
    Impl::Entry e{};
    e.kind = kind;
    e.i = i;
    e.j = j;
    e.k = k;
    e.l = l;
    return e;
  };
  for (const auto& name : names_) {
    Impl::Entry e{};
    if (name == "D_psi") e.kind = K::Diameter;
    else if (name == "rho") e.kind = K::Rho;
    else if (name == "energy") e.kind = K::Energy;
    else if (name == "h_gap") e.kind = K::Gap;
    else if (auto ix = indices_after(name, "Re_h_", 2, count); !ix.empty()) e = make(K::ReH, ix[0], ix[1]);
    else if (auto ix = indices_after(name, "Im_h_", 2, count); !ix.empty()) e = make(K::ImH, ix[0], ix[1]);
    else if (auto ix = indices_after(name, "abs_h_", 2, count); !ix.empty()) e = make(K::AbsH, ix[0], ix[1]);
    else if (auto ix = indices_after(name, "mass_", 1, count); !ix.empty()) e = make(K::Mass, ix[0]);
    else if (auto ix = indices_after(name, "crossratio_", 4, count); !ix.empty())
      e = make(K::CrossRatio, ix[0], ix[1], ix[2], ix[3]);
    else {
      bool found = false;
      for (std::size_t axis = 1; axis <= dim && !found; ++axis) {
        const std::string pre = "xc" + std::to_string(axis) + "_";
        if (name == "xcbar" + std::to_string(axis)) {
          e = make(K::MeanCenter, axis - 1);
          found = true;
        } else if (auto ix = indices_after(name, pre, 1, count); !ix.empty()) {
          e = make(K::Center, ix[0], axis - 1);
          found = true;
        }
      }
      if (!found)
        throw ConfigError({"channels: \"" + name + "\" is not a wave-field channel (N = " +
                           std::to_string(count) + ", dim = " + std::to_string(dim) + ")"});
    }
    if (e.kind == K::ReH || e.kind == K::ImH || e.kind == K::AbsH || e.kind == K::CrossRatio ||
        e.kind == K::Gap)
      impl_->needs_h = true;
    impl_->entries.push_back(e);
  }
}

WaveChannels::~WaveChannels() = default;
WaveChannels::WaveChannels(WaveChannels&&) noexcept = default;

TimeSeries::Sample WaveChannels::evaluate(const SLSystem& sys) {
  using K = Impl::Kind;
  TimeSeries::Sample out;
  CMatrix h;
  if (impl_->needs_h) h = correlation_matrix(sys);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t c = 0; c < names_.size(); ++c) {
    auto& e = impl_->entries[c];
    double v = nan;
    switch (e.kind) {
      case K::Diameter: v = ensemble_diameter(views(sys.fields), sys.grid.cell()); break;
      case K::Rho: v = order_parameter_rho(views(sys.fields), sys.grid.cell()); break;
      case K::ReH: v = h(Eigen::Index(e.i), Eigen::Index(e.j)).real(); break;
      case K::ImH: v = h(Eigen::Index(e.i), Eigen::Index(e.j)).imag(); break;
      case K::AbsH: v = std::abs(h(Eigen::Index(e.i), Eigen::Index(e.j))); break;
      case K::Mass: v = discrete_mass(sys.grid, sys.fields[e.i]); break;
      case K::Center: v = center_of_mass(sys.grid, sys.fields[e.i], e.j); break;
      case K::MeanCenter: {
        double s = 0.0;
        for (const auto& f : sys.fields) s += center_of_mass(sys.grid, f, e.i);
        v = s / double(sys.size());
        break;
      }
      case K::Energy: v = energy(sys); break;
      case K::Gap: {
        v = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < h.rows(); ++i)
          for (Eigen::Index j = 0; j < h.cols(); ++j)
            if (i != j) v = std::min(v, std::abs(1.0 - h(i, j)));
        break;
      }
      case K::CrossRatio: {
        const auto r = cross_ratio(h, e.i, e.j, e.k, e.l);
        if (!r.defined) break;
        if (!e.initial) e.initial = r.value;
        v = std::abs(r.value - *e.initial);
        break;
      }
    }
    out.emplace_back(names_[c], v);
  }
  return out;
}

}  // namespace lohe::experiments
