#pragma once

#include "qsd/fock.hpp"
#include "qsd/thermal.hpp"

namespace qsd {

/// Heralded truncation circuit parameters.  A single photon is split on a
/// beam splitter of transmissivity T, the input state is mixed with one
/// output arm on a balanced beam splitter, and the event (one photon, zero
/// photons) at the two detectors heralds the truncated state on the free arm.
struct QsdParams {
  double nbar;
  double transmissivity;
  double tail_tol = 1e-12;
};

struct QsdResult {
  DensityMatrix rho_out;    // heralded output, normalized
  double p_d;               // herald probability
  double p0;                // vacuum population of the output
  double p1;                // single-photon population of the output
  double truncation_bound;  // input tail mass discarded by the cutoff
};

/// Run the circuit on a thermal input.  `dim_a` is the cutoff of the output
/// mode; the physical output occupies levels 0 and 1, larger cutoffs expose
/// the (identically zero) higher levels as a diagnostic.
QsdResult run_qsd(const QsdParams& params, int dim_a = 2);

/// Run the circuit on an arbitrary single-mode input state.
QsdResult run_qsd_generic(const DensityMatrix& rho_in, double transmissivity,
                          int dim_a = 2);

}  // namespace qsd
