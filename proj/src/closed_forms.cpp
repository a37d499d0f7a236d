#include "qsd/closed_forms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qsd {

namespace {

void check_params(double nbar, double transmissivity) {
  if (!std::isfinite(nbar) || nbar < 0.0) {
    throw ParameterError("mean photon number must be finite and nonnegative");
  }
  if (!std::isfinite(transmissivity) || transmissivity < 0.0 ||
      transmissivity > 1.0) {
    throw ParameterError("transmissivity must lie in [0, 1]");
  }
}

void check_nondegenerate(double nbar, double transmissivity) {
  check_params(nbar, transmissivity);
  if (degenerate_corner(nbar, transmissivity)) {
    throw DegenerateParameterError(
        "vacuum input at unit transmissivity never triggers the herald");
  }
}

}  // namespace

bool degenerate_corner(double nbar, double transmissivity) {
  return nbar == 0.0 && transmissivity == 1.0;
}

CfPopulations cf_populations(double nbar, double transmissivity) {
  check_nondegenerate(nbar, transmissivity);
  const double den = nbar + 1.0 - transmissivity;
  return CfPopulations{(1.0 - transmissivity) * (nbar + 1.0) / den,
                       nbar * transmissivity / den};
}

double cf_pd(double nbar, double transmissivity) {
  check_nondegenerate(nbar, transmissivity);
  return (nbar + 1.0 - transmissivity) /
         (2.0 * (nbar + 1.0) * (nbar + 1.0));
}

double cf_mean(double nbar, double transmissivity) {
  return cf_populations(nbar, transmissivity).p1;
}

double cf_gain(double nbar, double transmissivity) {
  check_nondegenerate(nbar, transmissivity);
  if (nbar == 0.0) {
    throw UndefinedGainError("gain is undefined for zero input mean");
  }
  return transmissivity / (nbar + 1.0 - transmissivity);
}

double cf_snr(double nbar, double transmissivity) {
  check_nondegenerate(nbar, transmissivity);
  if (nbar == 0.0) return 0.0;
  if (transmissivity == 1.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(nbar * transmissivity /
                   ((1.0 - transmissivity) * (nbar + 1.0)));
}

double cf_parity(double nbar, double transmissivity) {
  const CfPopulations pops = cf_populations(nbar, transmissivity);
  return pops.p0 - pops.p1;
}

CfThresholds cf_thresholds(double nbar) {
  check_params(nbar, 0.0);
  const double beat = (nbar + 1.0) / (2.0 * nbar + 1.0);
  return CfThresholds{(nbar + 1.0) / 2.0, beat, beat};
}

double cf_wigner_out(double nbar, double transmissivity, Complex beta) {
  const CfPopulations pops = cf_populations(nbar, transmissivity);
  const double b2 = std::norm(beta);
  return (2.0 / std::numbers::pi) * std::exp(-2.0 * b2) *
         (pops.p0 + pops.p1 * (4.0 * b2 - 1.0));
}

double cf_wigner_thermal(double nbar, Complex beta) {
  check_params(nbar, 0.0);
  const double width = 2.0 * nbar + 1.0;
  return 2.0 / (std::numbers::pi * width) *
         std::exp(-2.0 * std::norm(beta) / width);
}

double cf_parity_thermal(double nbar) {
  check_params(nbar, 0.0);
  return 1.0 / (2.0 * nbar + 1.0);
}

}  // namespace qsd
