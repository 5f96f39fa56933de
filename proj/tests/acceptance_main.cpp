// Acceptance runner: one check suite per invocation, one PASS/FAIL line per
// report plus a suite verdict. Exit status 0 only when every report passes.
//
//   lohe_acceptance <suite> [report.json]

#include <fstream>
#include <iostream>

#include "lohe/experiments/checks.hpp"

using namespace lohe::experiments;

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: lohe_acceptance <suite> [report.json]\nsuites:\n";
    for (const auto& s : list_suites()) std::cerr << "  " << s.name << '\n';
    return 2;
  }
  const std::string suite = argv[1];
  std::vector<CheckReport> reports;
  try {
    CheckOptions opt;
    opt.log = &std::clog;
    reports = run_suite(suite, opt);
  } catch (const std::exception& e) {
    std::cout << "FAIL " << suite << ": " << e.what() << '\n';
    return 1;
  }
  json doc = {{"suite", suite}, {"pass", all_pass(reports)}, {"reports", json::array()}};
  for (const auto& r : reports) {
    std::cout << r.summary_line() << '\n';
    doc["reports"].push_back(r.to_json());
  }
  if (argc > 2) std::ofstream(argv[2]) << doc.dump(2) << '\n';
  std::cout << (all_pass(reports) ? "PASS " : "FAIL ") << suite << '\n';
  return all_pass(reports) ? 0 : 1;
}
