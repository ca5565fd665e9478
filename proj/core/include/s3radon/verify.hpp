#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace s3radon {

/// One named identity/invariant check with its measured error and tolerance.
struct CheckResult {
  int criterion = 0;          // acceptance criterion this check belongs to (0 = extra)
  std::string name;
  double measured = 0.0;      // max observed error (violation magnitude)
  double tol = 0.0;
  double seconds = 0.0;
  std::string detail;         // optional extra report text

  bool pass() const { return measured <= tol; }
};

struct VerifyOptions {
  std::uint64_t seed = 20240901;
  /// When > 0, overrides the tolerance of the quadrature-identity checks
  /// (Props 1-3, twofold transform, Asgeirsson, quarter-circle form).
  double tol_identity = 0.0;
};

/// Run the complete invariant suite of every module; each result carries the
/// acceptance criterion number it realizes.
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

/// Render one report line per check.
std::string format_check_line(const CheckResult& c);

}  // namespace s3radon
