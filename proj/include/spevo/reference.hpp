#pragma once

// Serial reference versions of the OpenMP kernels. Kept for equivalence
// tests and for the benchmark baseline; not used on any production path.

#include "spevo/spectral.hpp"

#include <span>
#include <vector>

namespace spevo::reference {

// Entry (i, c) = rayleigh_quotient(snapshots[i], basis.col(c)).
Matrix rayleigh_trajectory_matrix(std::span<const Matrix> snapshots, const Matrix& basis);

std::vector<SpectralDecomposition> decompose_all(std::span<const Matrix> matrices);

}  // namespace spevo::reference
