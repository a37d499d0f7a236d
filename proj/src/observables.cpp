#include "qsd/observables.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace qsd {

namespace {

void check_single_mode(const DensityMatrix& rho) {
  if (rho.space.num_modes() != 1) {
    throw DimensionError("observable expects a single-mode state");
  }
}

constexpr double kVarianceFloor = 1e-14;
constexpr double kMeanFloor = 1e-7;

}  // namespace

double mean_photon(const DensityMatrix& rho) {
  check_single_mode(rho);
  return expectation(rho, number_matrix(rho.space.dim(0))).real();
}

double second_moment(const DensityMatrix& rho) {
  check_single_mode(rho);
  const Matrix n = number_matrix(rho.space.dim(0));
  return expectation(rho, Matrix(n * n)).real();
}

double snr(const DensityMatrix& rho) {
  const double mean = mean_photon(rho);
  const double variance = std::max(second_moment(rho) - mean * mean, 0.0);
  if (variance <= kVarianceFloor) {
    return mean > kMeanFloor ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return mean / std::sqrt(variance);
}

double parity(const DensityMatrix& rho) {
  check_single_mode(rho);
  return expectation(rho, parity_matrix(rho.space.dim(0))).real();
}

double intensity_gain(double mean_out, double mean_in) {
  if (!(mean_in > 0.0)) {
    throw UndefinedGainError("gain is undefined for zero input mean");
  }
  return mean_out / mean_in;
}

double gain(const DensityMatrix& rho, double mean_in) {
  return intensity_gain(mean_photon(rho), mean_in);
}

Complex beta_from_qp(double q, double p) {
  return Complex(q, p) / std::sqrt(2.0);
}

void GridSpec::validate() const {
  if (!std::isfinite(q_min) || !std::isfinite(q_max) ||
      !std::isfinite(p_min) || !std::isfinite(p_max) || q_min >= q_max ||
      p_min >= p_max) {
    throw ParameterError("grid extents must be finite with min < max");
  }
  if (nq < 2 || np < 2) {
    throw ParameterError("grid needs at least 2 points per axis");
  }
  if (max_points < 4 ||
      static_cast<long long>(nq) * static_cast<long long>(np) > max_points) {
    throw ParameterError("grid too large: exceeds the configured point cap");
  }
}

double WignerGrid::min_value() const { return w.minCoeff(); }

std::pair<Eigen::Index, Eigen::Index> WignerGrid::min_index() const {
  Eigen::Index iq = 0;
  Eigen::Index ip = 0;
  w.minCoeff(&iq, &ip);
  return {iq, ip};
}

RealVector laguerre_values(int n_max, double x) {
  if (n_max < 0) throw ParameterError("laguerre order must be nonnegative");
  RealVector values(n_max + 1);
  values(0) = 1.0;
  if (n_max >= 1) values(1) = 1.0 - x;
  for (int n = 1; n < n_max; ++n) {
    values(n + 1) =
        ((2.0 * n + 1.0 - x) * values(n) - n * values(n - 1)) / (n + 1.0);
  }
  return values;
}

namespace {

RealVector axis(double lo, double hi, int n) {
  RealVector v(n);
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) v(i) = lo + i * step;
  v(n - 1) = hi;
  return v;
}

RealVector diagonal_real(const DensityMatrix& rho) {
  if (max_abs_offdiag(rho.data) != 0.0) {
    throw DimensionError(
        "laguerre wigner path needs an exactly diagonal state");
  }
  return rho.data.diagonal().real();
}

double laguerre_point(const RealVector& pops, Complex beta) {
  const double b2 = std::norm(beta);
  const RealVector lag =
      laguerre_values(static_cast<int>(pops.size()) - 1, 4.0 * b2);
  double sum = 0.0;
  double sign = 1.0;
  for (Eigen::Index n = 0; n < pops.size(); ++n) {
    sum += sign * pops(n) * lag(n);
    sign = -sign;
  }
  return (2.0 / std::numbers::pi) * std::exp(-2.0 * b2) * sum;
}

// Displacement D(beta) via one eigendecomposition of H = i(a+ - a) on the
// enlarged cutoff:  D(r e^{i phi}) = F+ V e^{-i r L} V+ F  with
// F = diag(e^{-i n phi}).  Phases commute with the parity, so
//   Tr[rho D P D+] = Tr[(F rho F+)  V e^{-irL} (V+ P V) e^{irL} V+].
class DisplacedParityEvaluator {
 public:
  DisplacedParityEvaluator(const DensityMatrix& rho, double r_max)
      : dim_(static_cast<int>(rho.space.total_dim())),
        cutoff_(dim_ + 20 +
                static_cast<int>(std::ceil(4.0 * r_max * r_max))),
        diagonal_(max_abs_offdiag(rho.data) == 0.0),
        rho_(rho.data) {
    Matrix h = Matrix::Zero(cutoff_, cutoff_);
    for (int n = 0; n + 1 < cutoff_; ++n) {
      const double w = std::sqrt(static_cast<double>(n + 1));
      h(n + 1, n) = Complex(0.0, w);
      h(n, n + 1) = Complex(0.0, -w);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    lambda_ = es.eigenvalues();
    v_top_ = es.eigenvectors().topRows(dim_);
    const Matrix& v = es.eigenvectors();
    Matrix parity = Matrix::Zero(cutoff_, cutoff_);
    for (int n = 0; n < cutoff_; ++n) {
      parity(n, n) = Complex(n % 2 == 0 ? 1.0 : -1.0, 0.0);
    }
    p_tilde_ = v.adjoint() * parity * v;
    if (diagonal_) {
      const Matrix sigma_tilde =
          v_top_.adjoint() * rho_.diagonal().asDiagonal() * v_top_;
      coeff_ = sigma_tilde.cwiseProduct(p_tilde_.transpose());
    }
  }

  double value(Complex beta) const {
    const double r = std::abs(beta);
    if (diagonal_) {
      auto [it, inserted] = radial_cache_.try_emplace(r, 0.0);
      if (inserted) it->second = contract(coeff_, r);
      return it->second;
    }
    const double phi = std::arg(beta);
    Eigen::VectorXcd phases(dim_);
    for (int n = 0; n < dim_; ++n) {
      phases(n) = std::exp(Complex(0.0, -n * phi));
    }
    const Matrix rotated =
        phases.asDiagonal() * rho_ * phases.conjugate().asDiagonal();
    const Matrix sigma_tilde = v_top_.adjoint() * rotated * v_top_;
    return contract(sigma_tilde.cwiseProduct(p_tilde_.transpose()), r);
  }

 private:
  double contract(const Matrix& coeff, double r) const {
    Eigen::VectorXcd u(cutoff_);
    for (int j = 0; j < cutoff_; ++j) {
      u(j) = std::exp(Complex(0.0, r * lambda_(j)));
    }
    const Eigen::VectorXcd folded = coeff * u.conjugate();
    const Complex total = (u.array() * folded.array()).sum();
    return (2.0 / std::numbers::pi) * total.real();
  }

  int dim_;
  int cutoff_;
  bool diagonal_;
  Matrix rho_;
  RealVector lambda_;
  Matrix v_top_;
  Matrix p_tilde_;
  Matrix coeff_;
  mutable std::map<double, double> radial_cache_;
};

double grid_r_max(const GridSpec& grid) {
  const double q = std::max(std::abs(grid.q_min), std::abs(grid.q_max));
  const double p = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
  return std::abs(beta_from_qp(q, p));
}

template <typename PointFn>
WignerGrid fill_grid(const GridSpec& grid, PointFn&& point) {
  WignerGrid out;
  out.q = axis(grid.q_min, grid.q_max, grid.nq);
  out.p = axis(grid.p_min, grid.p_max, grid.np);
  out.w.resize(grid.nq, grid.np);
  for (int iq = 0; iq < grid.nq; ++iq) {
    for (int ip = 0; ip < grid.np; ++ip) {
      out.w(iq, ip) = point(beta_from_qp(out.q(iq), out.p(ip)));
    }
  }
  return out;
}

}  // namespace

double wigner_laguerre_point(const DensityMatrix& rho, Complex beta) {
  check_single_mode(rho);
  return laguerre_point(diagonal_real(rho), beta);
}

WignerGrid wigner_laguerre(const DensityMatrix& rho, const GridSpec& grid) {
  check_single_mode(rho);
  grid.validate();
  const RealVector pops = diagonal_real(rho);
  return fill_grid(grid,
                   [&](Complex beta) { return laguerre_point(pops, beta); });
}

double wigner_displaced_parity_point(const DensityMatrix& rho, Complex beta) {
  check_single_mode(rho);
  DisplacedParityEvaluator eval(rho, std::abs(beta));
  return eval.value(beta);
}

WignerGrid wigner_displaced_parity(const DensityMatrix& rho,
                                   const GridSpec& grid) {
  check_single_mode(rho);
  grid.validate();
  DisplacedParityEvaluator eval(rho, grid_r_max(grid));
  return fill_grid(grid, [&](Complex beta) { return eval.value(beta); });
}

WignerGrid wigner(const DensityMatrix& rho, const GridSpec& grid) {
  check_single_mode(rho);
  if (max_abs_offdiag(rho.data) == 0.0) return wigner_laguerre(rho, grid);
  return wigner_displaced_parity(rho, grid);
}

double wigner_point(const DensityMatrix& rho, Complex beta) {
  check_single_mode(rho);
  if (max_abs_offdiag(rho.data) == 0.0) {
    return wigner_laguerre_point(rho, beta);
  }
  return wigner_displaced_parity_point(rho, beta);
}

std::optional<double> negativity_region_radius(double nbar,
                                               double transmissivity) {
  if (!std::isfinite(nbar) || nbar < 0.0) {
    throw ParameterError("mean photon number must be finite and nonnegative");
  }
  if (!std::isfinite(transmissivity) || transmissivity < 0.0 ||
      transmissivity > 1.0) {
    throw ParameterError("transmissivity must lie in [0, 1]");
  }
  if (nbar == 0.0 && transmissivity == 1.0) {
    throw DegenerateParameterError(
        "vacuum input at unit transmissivity never triggers the herald");
  }
  const double bracket = 2.0 * transmissivity * nbar -
                         (nbar + 1.0 - transmissivity);
  if (bracket < 0.0) return std::nullopt;
  return std::sqrt(bracket / (4.0 * nbar * transmissivity));
}

}  // namespace qsd
