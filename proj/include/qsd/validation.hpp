#pragma once

#include <string>
#include <vector>

namespace qsd {

struct CheckResult {
  std::string name;
  double deviation;  // measured
  double bound;      // allowed
  bool pass;
};

/// Structural tolerances shared by the checks and the tests.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kDiagonalTol = 1e-12;
inline constexpr double kPopulationTol = 1e-11;
inline constexpr double kOracleTol = 1e-10;
inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kHeisenbergTol = 1e-10;
inline constexpr double kParityWignerTol = 1e-10;
inline constexpr double kWignerNormTol = 1e-6;

/// Structural and oracle checks over a fixed set of operating points.
std::vector<CheckResult> run_validation(double tail_tol);

}  // namespace qsd
