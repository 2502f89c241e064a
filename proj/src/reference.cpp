#include "spevo/reference.hpp"

namespace spevo::reference {

Matrix rayleigh_trajectory_matrix(std::span<const Matrix> snapshots, const Matrix& basis) {
  Matrix values(static_cast<Eigen::Index>(snapshots.size()), basis.cols());
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      values(static_cast<Eigen::Index>(i), c) = rayleigh_quotient(snapshots[i], basis.col(c));
    }
  }
  return values;
}

std::vector<SpectralDecomposition> decompose_all(std::span<const Matrix> matrices) {
  std::vector<SpectralDecomposition> out;
  out.reserve(matrices.size());
  for (const auto& m : matrices) out.push_back(decompose(m));
  return out;
}

}  // namespace spevo::reference
