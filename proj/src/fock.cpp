#include "qsd/fock.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace qsd {

FockSpace::FockSpace(std::vector<int> dims) : dims_(std::move(dims)) {
  for (int d : dims_) {
    if (d < 1) {
      throw DimensionError("mode dimension must be at least 1, got " +
                           std::to_string(d));
    }
  }
  strides_.assign(dims_.size(), 1);
  for (int m = num_modes() - 2; m >= 0; --m) {
    strides_[m] = strides_[m + 1] * dims_[m + 1];
  }
  // zero modes is the scalar space: projecting away the last mode leaves a
  // 1x1 operator whose sole entry is a probability
  total_ = dims_.empty() ? 1 : strides_[0] * dims_[0];
}

void FockSpace::check_mode(int mode) const {
  if (mode < 0 || mode >= num_modes()) {
    throw DimensionError("mode index " + std::to_string(mode) +
                         " out of range for " + std::to_string(num_modes()) +
                         "-mode space");
  }
}

int FockSpace::dim(int mode) const {
  check_mode(mode);
  return dims_[mode];
}

Eigen::Index FockSpace::stride(int mode) const {
  check_mode(mode);
  return strides_[mode];
}

Eigen::Index FockSpace::index_of(const std::vector<int>& counts) const {
  if (static_cast<int>(counts.size()) != num_modes()) {
    throw DimensionError("expected " + std::to_string(num_modes()) +
                         " occupation counts, got " +
                         std::to_string(counts.size()));
  }
  Eigen::Index idx = 0;
  for (int m = 0; m < num_modes(); ++m) {
    if (counts[m] < 0 || counts[m] >= dims_[m]) {
      throw DimensionError("count " + std::to_string(counts[m]) +
                           " out of range for mode " + std::to_string(m) +
                           " of dimension " + std::to_string(dims_[m]));
    }
    idx += counts[m] * strides_[m];
  }
  return idx;
}

std::vector<int> FockSpace::counts_of(Eigen::Index index) const {
  if (index < 0 || index >= total_) {
    throw DimensionError("basis index " + std::to_string(index) +
                         " out of range");
  }
  std::vector<int> counts(dims_.size());
  for (int m = 0; m < num_modes(); ++m) {
    counts[m] = static_cast<int>(index / strides_[m]);
    index %= strides_[m];
  }
  return counts;
}

FockSpace FockSpace::without(int mode) const {
  check_mode(mode);
  std::vector<int> rest;
  rest.reserve(dims_.size() - 1);
  for (int m = 0; m < num_modes(); ++m) {
    if (m != mode) rest.push_back(dims_[m]);
  }
  return FockSpace(rest);
}

FockSpace tensor(const FockSpace& a, const FockSpace& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return FockSpace(dims);
}

DensityMatrix::DensityMatrix(FockSpace s, Matrix m)
    : space(std::move(s)), data(std::move(m)) {
  if (data.rows() != data.cols() || data.rows() != space.total_dim()) {
    throw DimensionError("operator is " + std::to_string(data.rows()) + "x" +
                         std::to_string(data.cols()) + " but the space has " +
                         std::to_string(space.total_dim()) +
                         " basis states");
  }
}

DensityMatrix make_fock_state(const FockSpace& space,
                              const std::vector<int>& counts) {
  Matrix m = Matrix::Zero(space.total_dim(), space.total_dim());
  const Eigen::Index idx = space.index_of(counts);
  m(idx, idx) = Complex(1.0, 0.0);
  return DensityMatrix(space, std::move(m));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Matrix m = Eigen::kroneckerProduct(a.data, b.data);
  return DensityMatrix(tensor(a.space, b.space), std::move(m));
}

DensityMatrix partial_project(const DensityMatrix& rho, int mode, int count) {
  const FockSpace& space = rho.space;
  const int d = space.dim(mode);
  if (count < 0 || count >= d) {
    throw DimensionError("projection count " + std::to_string(count) +
                         " out of range for mode of dimension " +
                         std::to_string(d));
  }
  const FockSpace out_space = space.without(mode);
  const Eigen::Index inner = space.stride(mode);
  const Eigen::Index outer = space.total_dim() / (inner * d);
  const Eigen::Index offset = count * inner;

  Matrix out(out_space.total_dim(), out_space.total_dim());
  for (Eigen::Index or_ = 0; or_ < outer; ++or_) {
    for (Eigen::Index oc = 0; oc < outer; ++oc) {
      out.block(or_ * inner, oc * inner, inner, inner) =
          rho.data.block(or_ * inner * d + offset, oc * inner * d + offset,
                         inner, inner);
    }
  }
  return DensityMatrix(out_space, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int mode) {
  const FockSpace& space = rho.space;
  const int d = space.dim(mode);
  const FockSpace out_space = space.without(mode);
  const Eigen::Index inner = space.stride(mode);
  const Eigen::Index outer = space.total_dim() / (inner * d);

  Matrix out = Matrix::Zero(out_space.total_dim(), out_space.total_dim());
  for (int k = 0; k < d; ++k) {
    const Eigen::Index offset = k * inner;
    for (Eigen::Index or_ = 0; or_ < outer; ++or_) {
      for (Eigen::Index oc = 0; oc < outer; ++oc) {
        out.block(or_ * inner, oc * inner, inner, inner) +=
            rho.data.block(or_ * inner * d + offset, oc * inner * d + offset,
                           inner, inner);
      }
    }
  }
  return DensityMatrix(out_space, std::move(out));
}

DensityMatrix pad_single_mode(const DensityMatrix& rho, int new_dim) {
  if (rho.space.num_modes() != 1) {
    throw DimensionError("pad_single_mode expects a single-mode operator");
  }
  const Eigen::Index old_dim = rho.space.total_dim();
  if (new_dim < old_dim) {
    throw DimensionError("cannot pad to a smaller cutoff");
  }
  Matrix m = Matrix::Zero(new_dim, new_dim);
  m.topLeftCorner(old_dim, old_dim) = rho.data;
  return DensityMatrix(FockSpace::single(new_dim), std::move(m));
}

Complex trace(const DensityMatrix& rho) { return rho.data.trace(); }

Complex expectation(const DensityMatrix& rho, const Matrix& op) {
  if (op.rows() != rho.data.rows() || op.cols() != rho.data.cols()) {
    throw DimensionError("observable does not match the state dimension");
  }
  return rho.data.cwiseProduct(op.transpose()).sum();
}

Matrix annihilation_matrix(int dim) {
  if (dim < 1) throw DimensionError("cutoff must be at least 1");
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    a(n - 1, n) = Complex(std::sqrt(static_cast<double>(n)), 0.0);
  }
  return a;
}

Matrix creation_matrix(int dim) { return annihilation_matrix(dim).adjoint(); }

Matrix number_matrix(int dim) {
  if (dim < 1) throw DimensionError("cutoff must be at least 1");
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = Complex(k, 0.0);
  return n;
}

Matrix parity_matrix(int dim) {
  if (dim < 1) throw DimensionError("cutoff must be at least 1");
  Matrix p = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) p(k, k) = Complex(k % 2 == 0 ? 1.0 : -1.0, 0.0);
  return p;
}

Matrix mode_operator(const FockSpace& space, int mode, const Matrix& op) {
  if (op.rows() != space.dim(mode) || op.cols() != space.dim(mode)) {
    throw DimensionError("single-mode operator does not match the mode cutoff");
  }
  Matrix result = op;
  for (int m = 0; m < mode; ++m) {
    result = Eigen::kroneckerProduct(
                 Matrix(Matrix::Identity(space.dim(m), space.dim(m))), result)
                 .eval();
  }
  for (int m = mode + 1; m < space.num_modes(); ++m) {
    result = Eigen::kroneckerProduct(
                 result, Matrix(Matrix::Identity(space.dim(m), space.dim(m))))
                 .eval();
  }
  return result;
}

double hermiticity_deviation(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double max_abs_offdiag(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r != c) worst = std::max(worst, std::abs(m(r, c)));
    }
  }
  return worst;
}

}  // namespace qsd
