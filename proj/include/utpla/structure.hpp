#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace utpla {

/// Half-open index range [begin, end).
struct Slice {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Slice&, const Slice&) = default;
};

/// Block boundaries of a partition of {0, ..., N-1} into consecutive runs,
/// one run per distinct eigenvalue at a given level d.
///
/// Stored zero-based: boundaries() = {0, b_1, ..., N}. one_based() yields the
/// {1, ..., N+1} convention used when reporting block structure.
class BlockVector {
 public:
  /// Throws ShapeError unless boundaries are strictly increasing, start at 0
  /// and contain at least two entries.
  BlockVector(std::vector<std::size_t> boundaries, std::size_t level);

  static BlockVector single(std::size_t n, std::size_t level);
  static BlockVector singletons(std::size_t n, std::size_t level);

  std::size_t size() const { return boundaries_.back(); }
  std::size_t block_count() const { return boundaries_.size() - 1; }
  std::size_t level() const { return level_; }
  Slice block(std::size_t i) const { return {boundaries_[i], boundaries_[i + 1]}; }
  std::vector<std::size_t> block_sizes() const;
  bool all_singletons() const { return block_count() == size(); }

  const std::vector<std::size_t>& boundaries() const { return boundaries_; }
  std::vector<std::size_t> one_based() const;

  friend bool operator==(const BlockVector&, const BlockVector&) = default;

 private:
  std::vector<std::size_t> boundaries_;
  std::size_t level_;
};

/// 0/1 mask applied by elementwise product.
///
///   LowerStrict      (P_L)_{ij} = [j < i]
///   UpperStrict      (P_R)_{ij} = [i < j]
///   Diagonal         (P_D)_{ij} = [i == j]
///   BlockComplement  zero on the diagonal blocks of a BlockVector, ones elsewhere
///   Block            ones on the diagonal blocks, zeros elsewhere
///
/// Block + BlockComplement is the all-ones matrix.
class SkeletalProjector {
 public:
  enum class Kind { LowerStrict, UpperStrict, Diagonal, BlockComplement, Block };

  static SkeletalProjector lower_strict(std::size_t rows, std::size_t cols);
  static SkeletalProjector upper_strict(std::size_t rows, std::size_t cols);
  static SkeletalProjector diagonal(std::size_t rows, std::size_t cols);
  static SkeletalProjector block_complement(const BlockVector& blocks);
  static SkeletalProjector block(const BlockVector& blocks);

  Kind kind() const { return kind_; }
  const Eigen::MatrixXd& mask() const { return mask_; }
  std::size_t rows() const { return static_cast<std::size_t>(mask_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(mask_.cols()); }

  /// Elementwise product with a single matrix.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& m) const;

 private:
  SkeletalProjector(Kind kind, Eigen::MatrixXd mask) : kind_(kind), mask_(std::move(mask)) {}

  Kind kind_;
  Eigen::MatrixXd mask_;
};

}  // namespace utpla
