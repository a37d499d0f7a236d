#include "qsd/beam_splitter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <unordered_map>
#include <utility>

namespace qsd {

namespace {

void check_spec(const BeamSplitterSpec& spec) {
  if (spec.mode_i < 0 || spec.mode_j < 0 || spec.mode_i == spec.mode_j) {
    throw DimensionError("beam splitter needs two distinct nonnegative modes");
  }
  if (!std::isfinite(spec.theta) || spec.theta < 0.0 ||
      spec.theta > std::numbers::pi / 2.0) {
    throw ParameterError("mixing angle must lie in [0, pi/2]");
  }
}

}  // namespace

double BeamSplitterSpec::t() const { return std::cos(theta); }
double BeamSplitterSpec::r() const { return std::sin(theta); }
double BeamSplitterSpec::transmissivity() const {
  const double c = std::cos(theta);
  return c * c;
}

BeamSplitterSpec BeamSplitterSpec::from_transmissivity(int mode_i, int mode_j,
                                                       double transmissivity) {
  if (!std::isfinite(transmissivity) || transmissivity < 0.0 ||
      transmissivity > 1.0) {
    throw ParameterError("transmissivity must lie in [0, 1]");
  }
  BeamSplitterSpec spec{mode_i, mode_j, std::acos(std::sqrt(transmissivity))};
  check_spec(spec);
  return spec;
}

BeamSplitter::BeamSplitter(FockSpace space, BeamSplitterSpec spec)
    : space_(std::move(space)), spec_(spec) {
  check_spec(spec_);
  const int di = space_.dim(spec_.mode_i);
  const int dj = space_.dim(spec_.mode_j);
  const int num_sectors = di + dj - 1;
  blocks_.resize(num_sectors);
  blocks_c_.resize(num_sectors);
  sector_low_.resize(num_sectors);

  for (int n = 0; n < num_sectors; ++n) {
    const int k_lo = std::max(0, n - (dj - 1));
    const int k_hi = std::min(n, di - 1);
    const int s = k_hi - k_lo + 1;
    sector_low_[n] = k_lo;
    if (spec_.theta == 0.0 || s == 1) {
      blocks_[n] = RealMatrix::Identity(s, s);
    } else {
      // Hermitian form i*G of the sector generator; G is the real
      // antisymmetric tridiagonal with G(r+1, r) = theta*sqrt((k+1)(n-k)).
      Matrix h = Matrix::Zero(s, s);
      for (int row = 0; row + 1 < s; ++row) {
        const int k = k_lo + row;
        const double w = spec_.theta * std::sqrt(static_cast<double>(k + 1) *
                                                 static_cast<double>(n - k));
        h(row + 1, row) = Complex(0.0, w);
        h(row, row + 1) = Complex(0.0, -w);
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      Eigen::VectorXcd phase(s);
      for (int x = 0; x < s; ++x) {
        phase(x) = std::exp(Complex(0.0, -es.eigenvalues()(x)));
      }
      const Matrix u =
          es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
      blocks_[n] = u.real();
    }
    blocks_c_[n] = blocks_[n].cast<Complex>();
  }

  const Eigen::Index total = space_.total_dim();
  const Eigen::Index stride_i = space_.stride(spec_.mode_i);
  const Eigen::Index stride_j = space_.stride(spec_.mode_j);
  group_of_.resize(total);
  pos_of_.resize(total);
  std::unordered_map<Eigen::Index, int> group_ids;
  std::vector<std::vector<std::pair<int, Eigen::Index>>> members_by_k;
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    const std::vector<int> counts = space_.counts_of(idx);
    const int ni = counts[spec_.mode_i];
    const int nj = counts[spec_.mode_j];
    const int n = ni + nj;
    const Eigen::Index spectator = idx - ni * stride_i - nj * stride_j;
    const Eigen::Index key = spectator * num_sectors + n;
    auto [it, inserted] =
        group_ids.try_emplace(key, static_cast<int>(members_by_k.size()));
    if (inserted) {
      members_by_k.emplace_back();
      group_sector_.push_back(n);
    }
    group_of_[idx] = it->second;
    members_by_k[it->second].emplace_back(ni, idx);
  }
  group_members_.resize(members_by_k.size());
  for (std::size_t g = 0; g < members_by_k.size(); ++g) {
    auto& mem = members_by_k[g];
    std::sort(mem.begin(), mem.end());
    group_members_[g].reserve(mem.size());
    for (std::size_t p = 0; p < mem.size(); ++p) {
      group_members_[g].push_back(mem[p].second);
      pos_of_[mem[p].second] = static_cast<int>(p);
    }
  }
}

int BeamSplitter::sector_low(int sector) const {
  if (sector < 0 || sector >= num_sectors()) {
    throw DimensionError("sector index out of range");
  }
  return sector_low_[sector];
}

const RealMatrix& BeamSplitter::sector_block(int sector) const {
  if (sector < 0 || sector >= num_sectors()) {
    throw DimensionError("sector index out of range");
  }
  return blocks_[sector];
}

Matrix BeamSplitter::matrix() const {
  Matrix u = Matrix::Zero(space_.total_dim(), space_.total_dim());
  for (std::size_t g = 0; g < group_members_.size(); ++g) {
    const auto& mem = group_members_[g];
    const RealMatrix& block = blocks_[group_sector_[g]];
    for (std::size_t pr = 0; pr < mem.size(); ++pr) {
      for (std::size_t pc = 0; pc < mem.size(); ++pc) {
        u(mem[pr], mem[pc]) = Complex(block(pr, pc), 0.0);
      }
    }
  }
  return u;
}

void BeamSplitter::conjugate_in_place(DensityMatrix& rho) const {
  if (rho.space != space_) {
    throw DimensionError("state space does not match the beam splitter");
  }
  const Eigen::Index total = space_.total_dim();
  const std::size_t num_groups = group_members_.size();

  // A result block (gr, gc) depends only on the input block (gr, gc), so
  // blocks that are exactly zero can be skipped and the update done in place.
  std::vector<std::uint8_t> dirty(num_groups * num_groups, 0);
  const Complex* data = rho.data.data();
  for (Eigen::Index c = 0; c < total; ++c) {
    const Complex* col = data + c * total;
    const std::size_t gc = group_of_[c];
    for (Eigen::Index r = 0; r < total; ++r) {
      if (col[r] != Complex(0.0, 0.0)) {
        dirty[group_of_[r] * num_groups + gc] = 1;
      }
    }
  }

  Matrix in, out;
  for (std::size_t gr = 0; gr < num_groups; ++gr) {
    const auto& mr = group_members_[gr];
    const Matrix& br = blocks_c_[group_sector_[gr]];
    for (std::size_t gc = 0; gc < num_groups; ++gc) {
      if (!dirty[gr * num_groups + gc]) continue;
      const auto& mc = group_members_[gc];
      in.resize(mr.size(), mc.size());
      for (std::size_t pr = 0; pr < mr.size(); ++pr) {
        for (std::size_t pc = 0; pc < mc.size(); ++pc) {
          in(pr, pc) = rho.data(mr[pr], mc[pc]);
        }
      }
      out = br * in * blocks_c_[group_sector_[gc]].transpose();
      for (std::size_t pr = 0; pr < mr.size(); ++pr) {
        for (std::size_t pc = 0; pc < mc.size(); ++pc) {
          rho.data(mr[pr], mc[pc]) = out(pr, pc);
        }
      }
    }
  }
}

Matrix bs_unitary(const FockSpace& space, const BeamSplitterSpec& spec) {
  return BeamSplitter(space, spec).matrix();
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& unitary) {
  if (unitary.rows() != rho.data.rows() ||
      unitary.cols() != rho.data.cols()) {
    throw DimensionError("unitary does not match the state dimension");
  }
  Matrix out = unitary * rho.data * unitary.adjoint();
  return DensityMatrix(rho.space, std::move(out));
}

DensityMatrix apply_unitary(DensityMatrix rho, const BeamSplitter& bs) {
  bs.conjugate_in_place(rho);
  return rho;
}

double heisenberg_check(const BeamSplitterSpec& spec, int dim_i, int dim_j) {
  if (dim_i < 2 || dim_j < 2) {
    throw DimensionError("heisenberg check needs at least two levels per mode");
  }
  const BeamSplitterSpec local{0, 1, spec.theta};
  check_spec(local);
  const FockSpace space({dim_i, dim_j});
  const Matrix u = bs_unitary(space, local);
  const Matrix ai = mode_operator(space, 0, annihilation_matrix(dim_i));
  const Matrix aj = mode_operator(space, 1, annihilation_matrix(dim_j));
  const double t = local.t();
  const double r = local.r();
  const Matrix dev_i = u * ai * u.adjoint() - (t * ai - r * aj);
  const Matrix dev_j = u * aj * u.adjoint() - (r * ai + t * aj);

  const int n_max = std::min(dim_i, dim_j) - 1;
  double worst = 0.0;
  for (Eigen::Index row = 0; row < space.total_dim(); ++row) {
    const auto rc = space.counts_of(row);
    if (rc[0] + rc[1] > n_max) continue;
    for (Eigen::Index col = 0; col < space.total_dim(); ++col) {
      const auto cc = space.counts_of(col);
      if (cc[0] + cc[1] > n_max) continue;
      worst = std::max({worst, std::abs(dev_i(row, col)),
                        std::abs(dev_j(row, col))});
    }
  }
  return worst;
}

}  // namespace qsd
