// Named verification suites over the desk corpora. Each suite assembles a
// fixed, deterministic list of checks (pinned values, dual-route agreements,
// cocycle laws) and runs them, optionally over a small worker pool. Check
// order and numeric results are reproducible given the same configuration.
#pragma once

#include <string>
#include <vector>

#include "wtrace/check_report.hpp"
#include "wtrace/lie_algebra.hpp"
#include "wtrace/types.hpp"

namespace wtrace {

struct SuiteConfig {
  AlgebraPtr algebra;             // null selects the built-in su(2)
  std::int64_t truncation = 256;  // cutoff for dense / extrapolated routes
  int depth = 8;                  // expansion depth for compositions
  double tol_engine = 1e-9;       // engine identities
  double tol_extrap = 1e-6;       // quantities needing tail extrapolation
  double tol_override = 0.0;      // when > 0, replaces every check tolerance
  Convention convention = Convention::kKernelPlus;
  int jobs = 1;
};

// Known suites: traces, radul, schwinger, lambda, loopgeom, chern, all.
// Throws std::invalid_argument for unknown names or unusable configuration.
std::vector<CheckReport> run_suite(const std::string& name,
                                   const SuiteConfig& config = {});

std::vector<std::string> suite_names();

}  // namespace wtrace
