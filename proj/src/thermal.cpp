#include "qsd/thermal.hpp"

#include <cmath>

namespace qsd {

namespace {

void check_spec(const ThermalSpec& spec) {
  if (!std::isfinite(spec.nbar) || spec.nbar < 0.0) {
    throw ParameterError("mean photon number must be finite and nonnegative");
  }
  if (!(spec.tail_tol > 0.0) || !(spec.tail_tol < 1.0)) {
    throw ParameterError("tail tolerance must lie in (0, 1)");
  }
}

}  // namespace

int thermal_cutoff(const ThermalSpec& spec) {
  check_spec(spec);
  const double q = spec.nbar / (spec.nbar + 1.0);
  int d = 2;  // keep at least the |0>,|1> levels the heralded output lives on
  while (std::pow(q, d) > spec.tail_tol) ++d;
  return d;
}

ThermalState make_thermal(const ThermalSpec& spec) {
  const int d = thermal_cutoff(spec);
  const double q = spec.nbar / (spec.nbar + 1.0);
  const double p0 = 1.0 / (spec.nbar + 1.0);
  Matrix m = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    m(n, n) = Complex(p0 * std::pow(q, n), 0.0);
  }
  return ThermalState{DensityMatrix(FockSpace::single(d), std::move(m)),
                      std::pow(q, d), d};
}

ThermalMoments thermal_moments(double nbar) {
  check_spec(ThermalSpec{nbar, 1e-12});
  ThermalMoments m;
  m.mean = nbar;
  m.second_moment = nbar + 2.0 * nbar * nbar;
  m.snr = nbar == 0.0 ? 0.0 : nbar / std::sqrt(nbar + nbar * nbar);
  return m;
}

}  // namespace qsd
