#pragma once

#include <string>
#include <vector>

namespace magcas {

/// Outcome of one cross-check in the built-in validation suite.
struct CheckResult {
  std::string name;
  bool passed;
  double max_deviation;
  double tolerance;
  std::string detail;
};

/// Test hook: deliberately corrupts one side of a check so the failure
/// path can be exercised end to end.
enum class FaultInjection { none, eps_v_sign };

struct ValidateConfig {
  double tolerance = 0.0;  ///< 0 keeps each check's own default
  FaultInjection fault = FaultInjection::none;
};

/// Runs the oracle suite at reduced grid density: tensor reduction onto
/// the closed Voigt forms, Fresnel limits, the numeric reflection oracle,
/// ideal-mirror calibration and the isotropic Lifshitz oracle.
std::vector<CheckResult> run_validation(const ValidateConfig& config = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace magcas
