#pragma once

#include <vector>

#include "qsd/fock.hpp"

namespace qsd {

/// Beam splitter exp(theta * (ai+ aj - ai aj+)) acting on modes (i, j).
/// Transmissivity T = cos^2(theta); theta is restricted to [0, pi/2].
struct BeamSplitterSpec {
  int mode_i;
  int mode_j;
  double theta;

  double t() const;  // cos(theta)
  double r() const;  // sin(theta)
  double transmissivity() const;

  static BeamSplitterSpec from_transmissivity(int mode_i, int mode_j,
                                              double transmissivity);
};

/// Truncated beam-splitter unitary in sector-blocked form.
///
/// The generator conserves n_i + n_j, so the unitary is block diagonal over
/// (spectator configuration, total photon number N).  Each sector block is a
/// real orthogonal matrix on the states |k>_i |N-k>_j, ordered by ascending
/// k, with k ranging over max(0, N-dj+1) .. min(N, di-1).  Blocks are
/// obtained by eigendecomposition of the (Hermitian) i-times-generator
/// restricted to the sector, which is exact for the truncated space: every
/// sector, complete or clipped by the cutoff, is invariant.
class BeamSplitter {
 public:
  BeamSplitter(FockSpace space, BeamSplitterSpec spec);

  const FockSpace& space() const { return space_; }
  const BeamSplitterSpec& spec() const { return spec_; }

  int num_sectors() const { return static_cast<int>(blocks_.size()); }
  int sector_low(int sector) const;
  const RealMatrix& sector_block(int sector) const;

  /// Dense unitary on the full space (zero outside the sector blocks).
  Matrix matrix() const;

  /// U rho U+ computed blockwise in place.  Basis-zero blocks of rho are
  /// skipped; the result is exactly the dense conjugation.
  void conjugate_in_place(DensityMatrix& rho) const;

 private:
  FockSpace space_;
  BeamSplitterSpec spec_;
  std::vector<RealMatrix> blocks_;   // indexed by N
  std::vector<Matrix> blocks_c_;     // complex copies for mixed products
  std::vector<int> sector_low_;      // smallest k in the sector basis

  // flat basis index -> (group, position); groups collect equal
  // (spectator, N) and list their members by ascending k
  std::vector<int> group_of_;
  std::vector<int> pos_of_;
  std::vector<std::vector<Eigen::Index>> group_members_;
  std::vector<int> group_sector_;
};

/// Dense truncated unitary (convenience wrapper).
Matrix bs_unitary(const FockSpace& space, const BeamSplitterSpec& spec);

/// U rho U+ for an arbitrary dense unitary.
DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& unitary);

/// Sector-blocked fast path; takes the state by value and updates it in place.
DensityMatrix apply_unitary(DensityMatrix rho, const BeamSplitter& bs);

/// Max deviation of U a_i U+ from t a_i - r a_j and of U a_j U+ from
/// r a_i + t a_j on a [dim_i, dim_j] test space, with bra and ket both
/// restricted to complete sectors (n_i + n_j <= min(dim_i, dim_j) - 1),
/// where the truncated unitary agrees with the untruncated one.
double heisenberg_check(const BeamSplitterSpec& spec, int dim_i = 4,
                        int dim_j = 4);

}  // namespace qsd
