// lohe: run experiment configs and check suites.
//
//   lohe run <config.json | builtin:NAME>... [--jobs N] [--out DIR] [--quiet]
//   lohe check <suite>... [--out DIR] [--quiet]
//   lohe list-suites
//   lohe list-configs
//   lohe export-configs DIR
//
// Exit codes: 0 success, 1 config error, 2 runtime divergence, 3 check failure.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "lohe/experiments/builtin_configs.hpp"
#include "lohe/experiments/checks.hpp"
#include "lohe/experiments/runner.hpp"

namespace fs = std::filesystem;
using namespace lohe::experiments;

namespace {

constexpr int kOk = 0, kConfigError = 1, kDivergence = 2, kCheckFailure = 3;

std::mutex io_mutex;

void print_config_error(const std::string& source, const ConfigError& e) {
  std::lock_guard lock(io_mutex);
  std::cerr << source << ": invalid config\n";
  for (const auto& d : e.diagnostics()) std::cerr << "  " << d << '\n';
}

ExperimentConfig load(const std::string& source) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return parse_config(builtin_config(source.substr(prefix.size())));
  return load_config(source);
}

int run_one(const std::string& source, const RunOptions& opt, bool quiet) {
  try {
    const ExperimentConfig cfg = load(source);
    const RunResult r = run_experiment(cfg, opt);
    std::lock_guard lock(io_mutex);
    if (r.diverged) {
      std::cerr << cfg.name << ": diverged at t = " << r.abort_time << " (index " << r.abort_index
                << "): " << r.message << "\n  partial output: " << r.csv_path << '\n';
      return kDivergence;
    }
    if (!quiet)
      std::cout << cfg.name << ": " << r.series.size() << " samples -> " << r.csv_path << '\n';
    return kOk;
  } catch (const ConfigError& e) {
    print_config_error(source, e);
    return kConfigError;
  } catch (const std::exception& e) {
    std::lock_guard lock(io_mutex);
    std::cerr << source << ": " << e.what() << '\n';
    return kConfigError;
  }
}

int run_all(const std::vector<std::string>& sources, const RunOptions& opt, unsigned jobs,
            bool quiet) {
  std::vector<int> codes(sources.size(), kOk);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < sources.size();) codes[i] = run_one(sources[i], opt, quiet);
  };
  std::vector<std::thread> pool;
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, unsigned(sources.size())));
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return *std::max_element(codes.begin(), codes.end());
}

int check_all(const std::vector<std::string>& suites, const std::string& out, bool quiet) {
  int code = kOk;
  for (const auto& suite : suites) {
    std::vector<CheckReport> reports;
    try {
      CheckOptions opt;
      opt.log = quiet ? nullptr : &std::clog;
      reports = run_suite(suite, opt);
    } catch (const UnknownSuiteError& e) {
      std::cerr << e.what() << "; see list-suites\n";
      code = std::max(code, kConfigError);
      continue;
    }
    json doc = {{"suite", suite}, {"pass", all_pass(reports)}, {"reports", json::array()}};
    for (const auto& r : reports) {
      doc["reports"].push_back(r.to_json());
      std::cout << r.summary_line() << '\n';
    }
    if (!out.empty()) {
      fs::create_directories(out);
      std::ofstream(fs::path(out) / (suite + ".report.json")) << doc.dump(2) << '\n';
    }
    std::cout << (all_pass(reports) ? "PASS " : "FAIL ") << suite << '\n';
    if (!all_pass(reports)) code = std::max(code, kCheckFailure);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lohe tensor and Schroedinger-Lohe simulations"};
  app.require_subcommand(1);

  unsigned jobs = 1;
  std::string out = "out";
  bool quiet = false;

  std::vector<std::string> configs;
  auto* run = app.add_subcommand("run", "Run experiment configs (paths or builtin:NAME)");
  run->add_option("configs", configs, "Config files")->required();
  run->add_option("--jobs,-j", jobs, "Configs run in parallel")->check(CLI::PositiveNumber);
  run->add_option("--out,-o", out, "Output directory");
  run->add_flag("--quiet,-q", quiet, "Only report errors");

  std::vector<std::string> suites;
  std::string report_dir;
  auto* check = app.add_subcommand("check", "Run named check suites");
  check->add_option("suites", suites, "Suite names")->required();
  check->add_option("--out,-o", report_dir, "Directory for JSON reports");
  check->add_flag("--quiet,-q", quiet, "No progress notes");

  auto* list = app.add_subcommand("list-suites", "List check suites");
  auto* list_configs = app.add_subcommand("list-configs", "List builtin configs");

  std::string export_dir;
  auto* exp = app.add_subcommand("export-configs", "Write builtin configs as JSON files");
  exp->add_option("dir", export_dir, "Target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  if (*run) {
    RunOptions opt;
    opt.out_dir = out;
    return run_all(configs, opt, jobs, quiet);
  }
  if (*check) return check_all(suites, report_dir, quiet);
  if (*list) {
    for (const auto& s : list_suites()) std::cout << s.name << "  " << s.description << '\n';
    return kOk;
  }
  if (*list_configs) {
    for (const auto& n : builtin_config_names()) std::cout << n << '\n';
    return kOk;
  }
  if (*exp) {
    fs::create_directories(export_dir);
    for (const auto& n : builtin_config_names())
      std::ofstream(fs::path(export_dir) / (n + ".json")) << builtin_config(n).dump(2) << '\n';
    return kOk;
  }
  return kOk;
}
