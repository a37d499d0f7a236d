#pragma once

#include <optional>
#include <utility>

#include "qsd/fock.hpp"

namespace qsd {

/// Photon-number moments of a single-mode state.
double mean_photon(const DensityMatrix& rho);
double second_moment(const DensityMatrix& rho);

/// mean / sqrt(variance).  Zero-variance states (variance <= 1e-14) map to
/// +inf when the mean is nonzero and to 0 for (numerical) vacuum, so the
/// vacuum limit agrees with the analytic signal-to-noise ratio.
double snr(const DensityMatrix& rho);

/// Tr(rho * (-1)^n).
double parity(const DensityMatrix& rho);

/// g = mean_out / mean_in; throws UndefinedGainError when mean_in <= 0.
double intensity_gain(double mean_out, double mean_in);

/// intensity_gain of mean_photon(rho) over mean_in.
double gain(const DensityMatrix& rho, double mean_in);

/// Phase-space point beta = (q + i p) / sqrt(2).
Complex beta_from_qp(double q, double p);

/// Rectangular phase-space grid, inclusive endpoints.  max_points is a
/// resource guard against accidentally huge scans; raise it deliberately.
struct GridSpec {
  double q_min = -3.0;
  double q_max = 3.0;
  int nq = 121;
  double p_min = -3.0;
  double p_max = 3.0;
  int np = 121;
  long long max_points = 4'000'000;

  void validate() const;
};

struct WignerGrid {
  RealVector q;    // size nq
  RealVector p;    // size np
  RealMatrix w;    // w(iq, ip) = W(q(iq), p(ip))

  double min_value() const;
  std::pair<Eigen::Index, Eigen::Index> min_index() const;
};

/// W(beta) for a diagonal state via the Laguerre series
///   W = (2/pi) e^{-2|b|^2} sum_n rho_nn (-1)^n L_n(4|b|^2).
/// Throws if the state has off-diagonal entries.
double wigner_laguerre_point(const DensityMatrix& rho, Complex beta);
WignerGrid wigner_laguerre(const DensityMatrix& rho, const GridSpec& grid);

/// W(beta) = (2/pi) Tr[rho D(beta) P D(-beta)] with the displacement built
/// on an enlarged cutoff K = dim + 20 + ceil(4 |beta|_max^2); the margin
/// grows with the displacement so the truncated D stays accurate.
WignerGrid wigner_displaced_parity(const DensityMatrix& rho,
                                   const GridSpec& grid);
double wigner_displaced_parity_point(const DensityMatrix& rho, Complex beta);

/// Dispatch: exactly diagonal states use the Laguerre series, anything else
/// the displaced-parity route.
WignerGrid wigner(const DensityMatrix& rho, const GridSpec& grid);
double wigner_point(const DensityMatrix& rho, Complex beta);

/// |beta| radius of the negative Wigner disk of the heralded output:
/// W < 0 exactly for |beta|^2 < (2 T nbar - (nbar + 1 - T)) / (4 nbar T).
/// Empty when the numerator is negative (no negative region); 0 exactly at
/// threshold.
std::optional<double> negativity_region_radius(double nbar,
                                               double transmissivity);

/// Laguerre polynomials L_0..L_n at x by the three-term recurrence.
RealVector laguerre_values(int n_max, double x);

}  // namespace qsd
