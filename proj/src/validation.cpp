#include "qsd/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsd/beam_splitter.hpp"
#include "qsd/closed_forms.hpp"
#include "qsd/observables.hpp"
#include "qsd/report.hpp"
#include "qsd/scissors.hpp"

namespace qsd {

namespace {

std::string point_tag(double nbar, double t) {
  return "[nbar=" + format_double(nbar) + ",T=" + format_double(t) + "]";
}

void add(std::vector<CheckResult>& results, std::string name, double deviation,
         double bound) {
  results.push_back(
      CheckResult{std::move(name), deviation, bound, deviation <= bound});
}

void check_point(std::vector<CheckResult>& results, double nbar, double t,
                 double tail_tol) {
  const std::string tag = point_tag(nbar, t);
  const QsdResult result = run_qsd(QsdParams{nbar, t, tail_tol});
  const Matrix& out = result.rho_out.data;

  add(results, "hermiticity" + tag, hermiticity_deviation(out),
      kHermitianTol);
  add(results, "positivity" + tag,
      std::max(0.0, -min_eigenvalue_hermitian(out)), kPsdTol);
  add(results, "unit_trace" + tag, std::abs(trace(result.rho_out).real() - 1.0),
      kTraceTol);
  add(results, "diagonality" + tag, max_abs_offdiag(out), kDiagonalTol);
  add(results, "population_closure" + tag,
      std::abs(result.p0 + result.p1 - 1.0), kPopulationTol);

  const CfPopulations pops = cf_populations(nbar, t);
  double oracle = std::max(
      {pair_deviation(result.p_d, cf_pd(nbar, t)),
       pair_deviation(result.p0, pops.p0), pair_deviation(result.p1, pops.p1),
       pair_deviation(mean_photon(result.rho_out), cf_mean(nbar, t)),
       pair_deviation(snr(result.rho_out), cf_snr(nbar, t)),
       pair_deviation(parity(result.rho_out), cf_parity(nbar, t))});
  if (nbar > 0.0) {
    oracle = std::max(oracle, pair_deviation(gain(result.rho_out, nbar),
                                             cf_gain(nbar, t)));
  }
  // the analytic forms must track the pipeline within 10x the tail mass
  add(results, "oracle_agreement" + tag, oracle,
      std::max(kOracleTol, 10.0 * tail_tol));
}

double dense_unitarity(const FockSpace& space, const BeamSplitterSpec& spec) {
  const Matrix u = bs_unitary(space, spec);
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

double sector_orthogonality(const BeamSplitter& bs) {
  double worst = 0.0;
  for (int n = 0; n < bs.num_sectors(); ++n) {
    const RealMatrix& block = bs.sector_block(n);
    const double dev =
        (block.transpose() * block -
         RealMatrix::Identity(block.rows(), block.cols()))
            .cwiseAbs()
            .maxCoeff();
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> run_validation(double tail_tol) {
  std::vector<CheckResult> results;

  const std::vector<double> nbars{0.0, 0.5, 1.2};
  const std::vector<double> ts{0.0, 0.3, 0.7, 1.0};
  for (double nbar : nbars) {
    for (double t : ts) {
      if (degenerate_corner(nbar, t)) continue;
      check_point(results, nbar, t, tail_tol);
    }
  }

  const FockSpace small({2, 6, 6});
  add(results, "unitarity[2,6,6][split]",
      dense_unitarity(small, BeamSplitterSpec::from_transmissivity(0, 2, 0.37)),
      kUnitarityTol);
  add(results, "unitarity[2,6,6][mix]",
      dense_unitarity(small, {1, 2, std::numbers::pi / 4.0}), kUnitarityTol);

  const int big = thermal_cutoff(ThermalSpec{1.2, tail_tol}) + 1;
  const FockSpace big_space({2, big, big});
  add(results, "sector_orthogonality[split]",
      sector_orthogonality(BeamSplitter(
          big_space, BeamSplitterSpec::from_transmissivity(0, 2, 0.37))),
      kUnitarityTol);
  add(results, "sector_orthogonality[mix]",
      sector_orthogonality(
          BeamSplitter(big_space, {1, 2, std::numbers::pi / 4.0})),
      kUnitarityTol);

  add(results, "heisenberg[theta=0]", heisenberg_check({0, 1, 0.0}),
      kHeisenbergTol);
  add(results, "heisenberg[theta=0.3]", heisenberg_check({0, 1, 0.3}),
      kHeisenbergTol);
  add(results, "heisenberg[theta=pi/4]",
      heisenberg_check({0, 1, std::numbers::pi / 4.0}), kHeisenbergTol);

  {
    const QsdResult result = run_qsd(QsdParams{0.5, 0.7, tail_tol});
    const double w0 = wigner_point(result.rho_out, Complex(0.0, 0.0));
    add(results, "parity_wigner[nbar=0.5,T=0.7]",
        std::abs(parity(result.rho_out) - std::numbers::pi / 2.0 * w0),
        kParityWignerTol);

    const GridSpec grid{-4.5, 4.5, 151, -4.5, 4.5, 151};
    const WignerGrid w = wigner(result.rho_out, grid);
    const double hq = (grid.q_max - grid.q_min) / (grid.nq - 1);
    const double hp = (grid.p_max - grid.p_min) / (grid.np - 1);
    double integral = 0.0;
    for (int iq = 0; iq < grid.nq; ++iq) {
      const double wq = (iq == 0 || iq == grid.nq - 1) ? 0.5 : 1.0;
      for (int ip = 0; ip < grid.np; ++ip) {
        const double wp = (ip == 0 || ip == grid.np - 1) ? 0.5 : 1.0;
        integral += wq * wp * w.w(iq, ip);
      }
    }
    integral *= hq * hp / 2.0;  // d^2 beta = dq dp / 2
    add(results, "wigner_normalization[nbar=0.5,T=0.7]",
        std::abs(integral - 1.0), kWignerNormTol);
  }

  {
    // a 3-level ancilla adds headroom the physics never uses: photon-number
    // conservation keeps the heralded output inside {|0>, |1>}
    const QsdResult result = run_qsd(QsdParams{0.5, 0.7, tail_tol}, 3);
    add(results, "ancilla_leakage[dim_a=3]", result.rho_out.data(2, 2).real(),
        kDiagonalTol);
  }

  {
    const std::vector<double> sweep_nbar{0.3};
    const std::vector<double> sweep_t{0.25, 0.75};
    const std::string first =
        render_merit_csv(make_sweep(sweep_nbar, sweep_t, tail_tol));
    const std::string second =
        render_merit_csv(make_sweep(sweep_nbar, sweep_t, tail_tol));
    add(results, "render_determinism", first == second ? 0.0 : 1.0, 0.0);
  }

  return results;
}

}  // namespace qsd
