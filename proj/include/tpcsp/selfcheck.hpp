#pragma once

#include <string>
#include <vector>

namespace tpcsp::selfcheck {

// Per-criterion workloads. full_sizes() pins the acceptance quantities;
// reduced_sizes() keeps the CLI selfcheck under a few seconds.
struct Sizes {
  int oracle_instances = 200;
  int oracle_max_n = 8;
  int identity_instances = 50;
  int rule_instances = 50;
  int kernel_instances = 50;
  int transform_instances = 20;
  int moment_compare_instances = 20;
  int lower_bound_instances = 100;
  int hyper_instances = 40;
  int family_max_level = 6;
  int random_subsets = 1000;
  int roundtrip_instances = 20;
};

Sizes full_sizes();
Sizes reduced_sizes();

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  long long duration_ms = 0;
};

struct Options {
  Sizes sizes = reduced_sizes();
  // corrupts one expected table constant so a harness test can watch the
  // suite go red
  bool inject_table_fault = false;
};

// Runs all twelve criteria and reports one result each; never throws for a
// failing criterion, only for internal faults.
std::vector<CheckResult> run_selfcheck(const Options& options);

}  // namespace tpcsp::selfcheck
