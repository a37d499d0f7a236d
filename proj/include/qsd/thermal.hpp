#pragma once

#include "qsd/fock.hpp"

namespace qsd {

/// Single-mode thermal state request: mean photon number and the geometric
/// tail mass allowed to fall outside the cutoff.
struct ThermalSpec {
  double nbar;
  double tail_tol = 1e-12;
};

/// Smallest cutoff d >= 2 with (nbar/(nbar+1))^d <= tail_tol, i.e. the
/// discarded tail sum_{n>=d} p_n does not exceed tail_tol.
int thermal_cutoff(const ThermalSpec& spec);

/// Truncated thermal state.  The matrix is diagonal with the exact geometric
/// populations p_n = nbar^n / (nbar+1)^(n+1); its trace is 1 - tail_mass.
struct ThermalState {
  DensityMatrix rho;
  double tail_mass;
  int cutoff;
};

ThermalState make_thermal(const ThermalSpec& spec);

/// Exact photon-number moments of the untruncated thermal distribution.
struct ThermalMoments {
  double mean;           // nbar
  double second_moment;  // nbar + 2*nbar^2
  double snr;            // nbar / sqrt(nbar + nbar^2), 0 at nbar = 0
};

ThermalMoments thermal_moments(double nbar);

}  // namespace qsd
