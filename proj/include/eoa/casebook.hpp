// Reference values for the worked examples: diag(1/3, 1/3, 1/3, 0), the
// diag(a, 0, 0, 1 - a) family, the twelve-member two-copy ensemble, capacities
// and the zero-assistance classifier.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace eoa {

struct CaseResult {
  std::string case_id;
  double expected;
  double computed;
  double tolerance;
  bool pass;  // |expected - computed| <= tolerance
};

CaseResult check_case(std::string id, double expected, double computed, double tolerance);

/// Runs every case. `expected_overrides` replaces the reference value of the
/// named rows (used to confirm a perturbed constant is caught).
std::vector<CaseResult> casebook(const std::map<std::string, double>& expected_overrides = {});

}  // namespace eoa
