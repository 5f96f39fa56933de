// Named check suites: each runs its configurations and compares the measured
// quantities with the predicted ones, producing one report per criterion part.

#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lohe/experiments/config.hpp"

namespace lohe::experiments {

class UnknownSuiteError : public std::invalid_argument {
 public:
  explicit UnknownSuiteError(const std::string& name)
      : std::invalid_argument("unknown check suite \"" + name + "\"") {}
};

struct CheckReport {
  std::string name;
  std::string reference;  // the statement being checked
  json hypotheses = json::object();
  json measured = json::object();
  std::string tolerance;
  bool pass = false;
  std::string detail;

  json to_json() const;
  std::string summary_line() const;  // "PASS name: detail"
};

struct SuiteInfo {
  std::string name;
  std::string description;
};

struct CheckOptions {
  std::ostream* log = nullptr;  // progress notes; null = silent
};

std::vector<SuiteInfo> list_suites();

// Throws UnknownSuiteError.
std::vector<CheckReport> run_suite(const std::string& name, const CheckOptions& options = {});

bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace lohe::experiments
