// Structured results for the verification suites: one record per checked
// identity, serializable as JSON (array of objects, fixed key order) or CSV
// (fixed header). Numeric fields are bit-stable across reruns; runtime_ms is
// wall-clock and is the only field allowed to vary.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wtrace/types.hpp"

namespace wtrace {

struct CheckReport {
  std::string check_id;   // suite-qualified identifier, e.g. "radul/pinned"
  std::string anchor;     // the identity being checked, in ASCII math
  cplx lhs = 0.0;
  cplx rhs = 0.0;
  double abs_err = 0.0;
  double tol = 0.0;
  bool pass = false;      // pass iff abs_err <= tol
  std::int64_t runtime_ms = 0;
};

std::string reports_to_json(const std::vector<CheckReport>& reports);
std::string reports_to_csv(const std::vector<CheckReport>& reports);
bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace wtrace
