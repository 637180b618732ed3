#include "utpla/structure.hpp"

#include <numeric>

#include "utpla/errors.hpp"

namespace utpla {

BlockVector::BlockVector(std::vector<std::size_t> boundaries, std::size_t level)
    : boundaries_(std::move(boundaries)), level_(level) {
  if (boundaries_.size() < 2 || boundaries_.front() != 0) {
    throw ShapeError("BlockVector: boundaries must start at 0 and hold at least one block");
  }
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (boundaries_[i] <= boundaries_[i - 1]) {
      throw ShapeError("BlockVector: boundaries must be strictly increasing");
    }
  }
}

BlockVector BlockVector::single(std::size_t n, std::size_t level) {
  return BlockVector({0, n}, level);
}

BlockVector BlockVector::singletons(std::size_t n, std::size_t level) {
  std::vector<std::size_t> b(n + 1);
  std::iota(b.begin(), b.end(), std::size_t{0});
  return BlockVector(std::move(b), level);
}

std::vector<std::size_t> BlockVector::block_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(block_count());
  for (std::size_t i = 0; i < block_count(); ++i) sizes.push_back(block(i).size());
  return sizes;
}

std::vector<std::size_t> BlockVector::one_based() const {
  auto b = boundaries_;
  for (auto& v : b) ++v;
  return b;
}

namespace {

Eigen::MatrixXd block_mask(const BlockVector& blocks) {
  const auto n = static_cast<Eigen::Index>(blocks.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < blocks.block_count(); ++i) {
    const Slice s = blocks.block(i);
    const auto b = static_cast<Eigen::Index>(s.begin);
    const auto len = static_cast<Eigen::Index>(s.size());
    m.block(b, b, len, len).setOnes();
  }
  return m;
}

}  // namespace

SkeletalProjector SkeletalProjector::lower_strict(std::size_t rows, std::size_t cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = j < i ? 1.0 : 0.0;
  return {Kind::LowerStrict, std::move(m)};
}

SkeletalProjector SkeletalProjector::upper_strict(std::size_t rows, std::size_t cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = i < j ? 1.0 : 0.0;
  return {Kind::UpperStrict, std::move(m)};
}

SkeletalProjector SkeletalProjector::diagonal(std::size_t rows, std::size_t cols) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(rows, cols);
  return {Kind::Diagonal, std::move(m)};
}

SkeletalProjector SkeletalProjector::block_complement(const BlockVector& blocks) {
  Eigen::MatrixXd m = block_mask(blocks);
  m = Eigen::MatrixXd::Ones(m.rows(), m.cols()) - m;
  return {Kind::BlockComplement, std::move(m)};
}

SkeletalProjector SkeletalProjector::block(const BlockVector& blocks) {
  return {Kind::Block, block_mask(blocks)};
}

Eigen::MatrixXd SkeletalProjector::apply(const Eigen::MatrixXd& m) const {
  if (m.rows() != mask_.rows() || m.cols() != mask_.cols()) {
    throw ShapeError("projector: shape mismatch");
  }
  return mask_.cwiseProduct(m);
}

}  // namespace utpla
