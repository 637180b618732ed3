#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "utpla/structure.hpp"
#include "utpla/utp_matrix.hpp"
#include "utpla/utp_scalar.hpp"

namespace utpla {

inline constexpr double kDefaultBlockTolerance = 1e-7;

struct EighOptions {
  /// Eigenvalues whose level-d coefficients differ by less than this are
  /// treated as one block at that level.
  double block_tol = kDefaultBlockTolerance;
  /// Optional orthonormal eigenbasis of A_0 to use instead of the solver's.
  /// Must diagonalize A_0 with nondecreasing diagonal. Lets callers pick the
  /// basis inside degenerate eigenspaces.
  std::optional<Eigen::MatrixXd> initial_basis;
};

/// Symmetric eigendecomposition of A_0 sorted ascending; each eigenvector's
/// largest-magnitude entry is made positive.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> classical_eigh(const Eigen::MatrixXd& a);

/// Maximal runs of `lam0` (nondecreasing) whose consecutive gaps are below
/// `tol`. Throws ConsistencyError if lam0 is not sorted.
BlockVector detect_blocks(const Eigen::VectorXd& lam0, double tol, std::size_t level = 1);

struct Eigh1Result {
  UtpMatrix lam;  // Lam_0 diagonal, Lam_d block diagonal on `blocks`
  UtpMatrix q;
  BlockVector blocks;
};

/// Level-1 relaxed problem: diagonalize the zeroth coefficient and
/// block-diagonalize the higher ones on the multiplicity blocks of Lam_0.
/// Input coefficients are symmetrized; asymmetry above
/// 1e-12 * max(1, ||A_0||_inf) throws ConsistencyError.
Eigh1Result eigh1(const UtpMatrix& a, const EighOptions& options = {});

/// Extend an orthogonal polynomial matrix to `degree` coefficients keeping
/// Q^T Q = I: Q_k = -1/2 Q_0 sum_{i=1}^{k-1} Q_i^T Q_{k-i}.
/// Throws ConsistencyError if the given prefix is not orthogonal to 1e-10,
/// measured relative to the size of the coefficient products.
UtpMatrix qlift(const UtpMatrix& q, std::size_t degree);

struct EighFactors {
  UtpMatrix lam;
  UtpMatrix q;
  /// Block structure b^0, b^1, ... for every level the algorithm visited.
  std::vector<BlockVector> blocks;

  /// Diagonal of lam as scalar polynomials.
  std::vector<UtpScalar> eigenvalues() const;
  /// Block vector of the deepest level reached.
  const BlockVector& final_blocks() const { return blocks.back(); }
};

/// Taylor-arithmetic symmetric eigendecomposition with repeated eigenvalues.
///
/// Walks the levels d = 0, 1, ...: each block of b^d is handed to eigh1 on
/// its coefficients d..D-1, the block rotations are lifted back to degree D
/// and accumulated into Q. Stops once every block is a singleton or all D
/// levels have been processed. Blocks within a level are solved in parallel.
EighFactors eigh_pushforward(const UtpMatrix& a, const EighOptions& options = {});

struct EighPullbackOptions {
  /// Minimum gap between consecutive eigenvalues of Lam_0.
  double gap_tol = kDefaultBlockTolerance;
  bool validate = true;
  double tolerance = 1e-8;
};

/// Reverse-mode rule for distinct eigenvalues in Taylor arithmetic:
///   abar + Q (P_D o Lambar + H o (Q^T Qbar)) Q^T,  H_ij = 1/(lam_j - lam_i), i != j.
/// Throws ConsistencyError if two eigenvalues of Lam_0 are closer than gap_tol.
UtpMatrix eigh_pullback(const UtpMatrix& a, const UtpMatrix& q, const UtpMatrix& lam,
                        const UtpMatrix& abar, const UtpMatrix& qbar,
                        const UtpMatrix& lambar, const EighPullbackOptions& options = {});

}  // namespace utpla
