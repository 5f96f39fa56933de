#include "lohe/experiments/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lohe/experiments/problem.hpp"
#include "lohe/integrator.hpp"
#include "lohe/tscn.hpp"

namespace lohe::experiments {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void run_ode(const ExperimentConfig& cfg, RunResult& r) {
  OdeProblem p = build_ode_problem(cfg);
  const IntegratorConfig& ic = cfg.ode.integrator;
  for (const auto& ch : p.channels) r.series.add_channel(ch.name);
  CVector y = p.state;
  Rk4Stepper stepper(y.size());
  auto sample = [&](double t) {
    TimeSeries::Sample s;
    for (const auto& ch : p.channels) s.emplace_back(ch.name, ch.eval(t, y));
    r.series.push(t, s);
  };
  const std::size_t steps = ic.steps();
  double t = 0.0;
  try {
    sample(0.0);
    for (std::size_t k = 1; k <= steps; ++k) {
      stepper.step(p.flow, t, ic.dt, y);
      t = double(k) * ic.dt;
      if (ic.reproject) p.projection(y);
      require_finite(y, t);
      if (k % ic.sample_every == 0 || k == steps) sample(t);
    }
  } catch (const DivergenceError& e) {
    r.diverged = true;
    r.message = e.what();
    r.abort_time = e.time();
    r.abort_index = e.index();
  }
  r.final_state = std::move(y);
}

void run_wave(const ExperimentConfig& cfg, RunResult& r, const RunOptions& opt,
              const std::string& stem) {
  const WaveSpec& w = cfg.wave;
  SLSystem sys = build_sl_system(cfg);
  WaveChannels channels(cfg.channels.value_or(default_channels(cfg)), w.count, w.grid.dim());
  for (const auto& n : channels.names()) r.series.add_channel(n);
  TscnSolver solver(std::move(sys), w.dt, w.cn);
  const auto steps = std::size_t(std::llround(w.t_end / w.dt));

  std::vector<std::size_t> snap_steps;
  for (double ts : w.snapshot_times) snap_steps.push_back(std::size_t(std::llround(ts / w.dt)));
  std::vector<std::size_t> comps = w.snapshot_components;
  if (comps.empty())
    for (std::size_t j = 0; j < w.count; ++j) comps.push_back(j);

  auto take_snapshots = [&](std::size_t step, std::size_t index) {
    if (!opt.write_files) return;
    for (auto j : comps) {
      const std::string file = stem + "_snap" + std::to_string(index) + "_c" + std::to_string(j + 1) + ".csv";
      write_density_snapshot((fs::path(opt.out_dir) / file).string(), w.grid, double(step) * w.dt, j,
                             solver.system().fields[j]);
      r.snapshot_paths.push_back(file);
    }
  };
  auto check = [&](std::size_t step) {
    const auto& f = solver.system().fields;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (!std::isfinite(discrete_mass(w.grid, f[j])))
        throw DivergenceError(double(step) * w.dt, j, "non-finite wave field in component " + std::to_string(j + 1));
  };

  std::size_t step = 0;
  try {
    r.series.push(0.0, channels.evaluate(solver.system()));
    for (std::size_t i = 0; i < snap_steps.size(); ++i)
      if (snap_steps[i] == 0) take_snapshots(0, i);
    while (step < steps) {
      std::size_t next = std::min(steps, (step / w.sample_every + 1) * w.sample_every);
      for (auto s : snap_steps)
        if (s > step && s < next) next = s;
      solver.evolve(next - step);
      step = next;
      check(step);
      const double t = double(step) * w.dt;
      if (step % w.sample_every == 0 || step == steps) r.series.push(t, channels.evaluate(solver.system()));
      for (std::size_t i = 0; i < snap_steps.size(); ++i)
        if (snap_steps[i] == step) take_snapshots(step, i);
    }
  } catch (const DivergenceError& e) {
    r.diverged = true;
    r.message = e.what();
    r.abort_time = e.time();
    r.abort_index = e.index();
  } catch (const ConvergenceError& e) {
    r.diverged = true;
    r.message = e.what();
    r.abort_time = double(step) * w.dt;
  } catch (const SingularityError& e) {
    r.diverged = true;
    r.message = e.what();
    r.abort_time = double(step) * w.dt;
  }
  r.final_system = solver.system();
}

void write_manifest(const ExperimentConfig& cfg, const RunResult& r, const std::string& path) {
  json m;
  m["name"] = cfg.name;
  m["model"] = std::string(to_string(cfg.model));
  m["config"] = cfg.document;
  m["csv"] = fs::path(r.csv_path).filename().string();
  m["channels"] = r.series.names();
  m["samples"] = r.series.size();
  m["snapshots"] = r.snapshot_paths;
  m["status"] = r.diverged ? "diverged" : "ok";
  if (r.diverged)
    m["abort"] = {{"time", r.abort_time}, {"index", r.abort_index}, {"message", r.message}};
  else
    m["abort"] = nullptr;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << m.dump(2) << '\n';
}

}  // namespace

void write_density_snapshot(const std::string& path, const Grid& grid, double t,
                            std::size_t component, const CVector& field) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  const Axis& ax = grid.axis(0);
  os << "d,M,a,b,t,component\r\n";
  os << grid.dim() << ',' << ax.M << ',' << fmt(ax.a) << ',' << fmt(ax.b) << ',' << fmt(t) << ','
     << component + 1 << "\r\n";
  const std::size_t cols = grid.dim() == 1 ? ax.M : grid.axis(1).M;
  for (std::size_t i = 0; i < field.size(); ++i) {
    os << fmt(std::norm(field[i]));
    os << ((i + 1) % cols == 0 ? "\r\n" : ",");
  }
}

RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  RunResult r;
  r.name = cfg.name;
  const std::string stem = cfg.output.empty() ? cfg.name : cfg.output;
  if (options.write_files) fs::create_directories(options.out_dir);
  if (cfg.is_wave())
    run_wave(cfg, r, options, stem);
  else
    run_ode(cfg, r);
  if (options.write_files) {
    const fs::path dir(options.out_dir);
    r.csv_path = (dir / (stem + ".csv")).string();
    r.manifest_path = (dir / (stem + ".json")).string();
    r.series.write_csv(r.csv_path);
    write_manifest(cfg, r, r.manifest_path);
  }
  return r;
}

}  // namespace lohe::experiments
