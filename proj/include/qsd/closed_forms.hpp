#pragma once

#include "qsd/fock.hpp"

namespace qsd {

/// Closed-form predictions for the heralded output of the truncation
/// circuit with a thermal input of mean photon number nbar and a splitting
/// transmissivity T.  All forms share the denominator nbar + 1 - T, which
/// vanishes only at the degenerate corner (nbar, T) = (0, 1).

/// True when the herald probability vanishes identically.
bool degenerate_corner(double nbar, double transmissivity);

struct CfPopulations {
  double p0;  // (1 - T)(nbar + 1) / (nbar + 1 - T)
  double p1;  // nbar T / (nbar + 1 - T)
};

CfPopulations cf_populations(double nbar, double transmissivity);

/// Herald probability (nbar + 1 - T) / (2 (nbar + 1)^2).
double cf_pd(double nbar, double transmissivity);

/// Output mean photon number nbar T / (nbar + 1 - T); equals p1.
double cf_mean(double nbar, double transmissivity);

/// Intensity gain T / (nbar + 1 - T); throws UndefinedGainError at nbar = 0.
double cf_gain(double nbar, double transmissivity);

/// sqrt(nbar T / ((1 - T)(nbar + 1))); 0 at nbar = 0, +inf at T = 1.
double cf_snr(double nbar, double transmissivity);

/// p0 - p1 = (nbar + 1 - T - 2 nbar T) / (nbar + 1 - T).
double cf_parity(double nbar, double transmissivity);

/// Transmissivities at which the output crosses its figure-of-merit marks.
struct CfThresholds {
  double gain;    // (nbar + 1) / 2, gain > 1 beyond it
  double snr;     // (nbar + 1) / (2 nbar + 1), SNR exceeds 1 beyond it
  double wigner;  // same value; W(0) turns negative beyond it
};

CfThresholds cf_thresholds(double nbar);

/// Output Wigner function
///   W(beta) = (2/pi) e^{-2|beta|^2} (p0 + p1 (4|beta|^2 - 1)).
double cf_wigner_out(double nbar, double transmissivity, Complex beta);

/// Thermal-input Wigner function
///   W(beta) = 2 / (pi (2 nbar + 1)) e^{-2|beta|^2 / (2 nbar + 1)}.
double cf_wigner_thermal(double nbar, Complex beta);

/// Thermal parity 1 / (2 nbar + 1).
double cf_parity_thermal(double nbar);

}  // namespace qsd
