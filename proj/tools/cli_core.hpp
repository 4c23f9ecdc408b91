#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "eismeas/measure.hpp"

namespace eismeas::cli {

struct RunConfig {
  long p = 5;
  long m = 1;
  long k = 4;
  long c = 3;
  long mprime = 3;
  long qprec = 60;
  long cutoff = 4000;
  double tol = 1e-6;
  long max_k = 20;
  std::string format;
  std::string out;
  std::string kind;
  std::string convention = "as-printed";
  std::vector<std::string> suites;

  Json to_json() const;
};

struct SuiteResult {
  std::string name;
  std::vector<MeasureReport> reports;
  bool passed = true;
};

enum ExitCode { kPass = 0, kCheckFailure = 1, kUsageError = 2 };

const std::vector<std::string>& suite_names();
// Throws InvalidArgument for configurations the suite cannot run with.
void validate_suite(const std::string& suite, const RunConfig& cfg);
SuiteResult run_suite(const std::string& suite, const RunConfig& cfg);

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full command line (argv[0] included).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eismeas::cli
