#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qsd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Mode indices, dimensions, or occupation counts do not fit the space.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A numeric parameter lies outside its admissible range.
struct ParameterError : std::domain_error {
  using std::domain_error::domain_error;
};

/// The parameter combination makes the requested quantity degenerate
/// (e.g. a herald outcome that occurs with probability zero).
struct DegenerateParameterError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Gain is requested for an input state with zero mean photon number.
struct UndefinedGainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Truncated multimode Fock space.  Mode 0 is the slowest-varying index in
/// the flattened tensor basis:
///   flat(counts) = sum_m counts[m] * stride(m),  stride(m) = prod_{k>m} dim(k).
/// The zero-mode space is allowed and has total dimension 1, so projecting
/// away the last mode of a state leaves a 1x1 probability.
class FockSpace {
 public:
  explicit FockSpace(std::vector<int> dims);

  static FockSpace single(int dim) { return FockSpace(std::vector<int>{dim}); }

  int num_modes() const { return static_cast<int>(dims_.size()); }
  int dim(int mode) const;
  const std::vector<int>& dims() const { return dims_; }
  Eigen::Index total_dim() const { return total_; }
  Eigen::Index stride(int mode) const;

  Eigen::Index index_of(const std::vector<int>& counts) const;
  std::vector<int> counts_of(Eigen::Index index) const;

  /// Space with one mode removed (basis bookkeeping for projections/traces).
  FockSpace without(int mode) const;

  bool operator==(const FockSpace& other) const { return dims_ == other.dims_; }
  bool operator!=(const FockSpace& other) const { return dims_ != other.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<Eigen::Index> strides_;
  Eigen::Index total_ = 1;

  void check_mode(int mode) const;
};

FockSpace tensor(const FockSpace& a, const FockSpace& b);

/// Dense operator on a FockSpace; used for states and for observables alike.
struct DensityMatrix {
  FockSpace space;
  Matrix data;

  DensityMatrix(FockSpace s, Matrix m);
};

/// Rank-1 projector |counts><counts| on the given space.
DensityMatrix make_fock_state(const FockSpace& space,
                              const std::vector<int>& counts);

/// Kronecker product; the modes of `b` come after the modes of `a`.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Unnormalized conditional block <count|_mode rho |count>_mode.
/// The projected mode is removed from the space; the trace of the result is
/// the probability of finding `count` quanta in that mode.
DensityMatrix partial_project(const DensityMatrix& rho, int mode, int count);

/// Sum of partial_project over all counts of the mode.
DensityMatrix partial_trace(const DensityMatrix& rho, int mode);

/// Zero-pad a single-mode operator to a larger cutoff.
DensityMatrix pad_single_mode(const DensityMatrix& rho, int new_dim);

Complex trace(const DensityMatrix& rho);

/// Tr(rho * op) without forming the product.
Complex expectation(const DensityMatrix& rho, const Matrix& op);

/// Single-mode matrices at cutoff `dim` (indices 0..dim-1).
Matrix annihilation_matrix(int dim);
Matrix creation_matrix(int dim);
Matrix number_matrix(int dim);
Matrix parity_matrix(int dim);

/// I (x) ... (x) op (x) ... (x) I with `op` acting on `mode`.
Matrix mode_operator(const FockSpace& space, int mode, const Matrix& op);

double hermiticity_deviation(const Matrix& m);
double min_eigenvalue_hermitian(const Matrix& m);
double max_abs_offdiag(const Matrix& m);

}  // namespace qsd
