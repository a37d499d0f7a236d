#include "qsd/scissors.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qsd/beam_splitter.hpp"

namespace qsd {

namespace {

void check_transmissivity(double transmissivity) {
  if (!std::isfinite(transmissivity) || transmissivity < 0.0 ||
      transmissivity > 1.0) {
    throw ParameterError("transmissivity must lie in [0, 1]");
  }
}

// Modes: 0 = output arm carrying the split single photon, 1 = input state,
// 2 = ancilla starting in vacuum.  Herald: one photon on mode 1, zero on
// mode 2, after the balanced mixing of modes (1, 2).
QsdResult run_pipeline(const DensityMatrix& rho_in_padded, double T, int dim_a,
                       double truncation_bound) {
  const int db = rho_in_padded.space.dim(0);
  const FockSpace space({dim_a, db, db});

  DensityMatrix rho = tensor(
      tensor(make_fock_state(FockSpace::single(dim_a), {1}), rho_in_padded),
      make_fock_state(FockSpace::single(db), {0}));

  const BeamSplitter split(space,
                           BeamSplitterSpec::from_transmissivity(0, 2, T));
  const BeamSplitter mix(space, {1, 2, std::numbers::pi / 4.0});
  rho = apply_unitary(std::move(rho), split);
  rho = apply_unitary(std::move(rho), mix);

  DensityMatrix heralded = partial_project(partial_project(rho, 2, 0), 1, 1);
  const double p_d = trace(heralded).real();
  if (!(p_d > 1e-15)) {
    throw DegenerateParameterError(
        "herald outcome has vanishing probability for these parameters");
  }
  heralded.data /= p_d;
  const double p0 = heralded.data(0, 0).real();
  const double p1 = heralded.data(1, 1).real();
  return QsdResult{std::move(heralded), p_d, p0, p1, truncation_bound};
}

}  // namespace

QsdResult run_qsd(const QsdParams& params, int dim_a) {
  check_transmissivity(params.transmissivity);
  if (dim_a < 2) {
    throw DimensionError("output cutoff must be at least 2");
  }
  if (params.nbar == 0.0 && params.transmissivity == 1.0) {
    throw DegenerateParameterError(
        "vacuum input at unit transmissivity never triggers the herald");
  }
  const ThermalState thermal =
      make_thermal(ThermalSpec{params.nbar, params.tail_tol});
  const DensityMatrix padded =
      pad_single_mode(thermal.rho, thermal.cutoff + 1);
  return run_pipeline(padded, params.transmissivity, dim_a,
                      thermal.tail_mass);
}

QsdResult run_qsd_generic(const DensityMatrix& rho_in, double transmissivity,
                          int dim_a) {
  check_transmissivity(transmissivity);
  if (dim_a < 2) {
    throw DimensionError("output cutoff must be at least 2");
  }
  if (rho_in.space.num_modes() != 1) {
    throw DimensionError("input state must be single mode");
  }
  const DensityMatrix padded =
      pad_single_mode(rho_in, rho_in.space.dim(0) + 1);
  return run_pipeline(padded, transmissivity, dim_a, 0.0);
}

}  // namespace qsd
