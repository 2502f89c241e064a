#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace spevo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kZeroTolerance = 1e-12;
inline constexpr double kReconstructionTolerance = 1e-8;

/// Eigenpairs of a symmetric matrix.
///
/// Columns of `eigenvectors` are unit eigenvectors; `eigenvalues(j)` belongs
/// to column j. Pairs are ordered by descending |lambda| (positive before
/// negative on equal magnitude) and every column is sign-canonical: its first
/// entry with magnitude above kZeroTolerance is nonnegative.
struct SpectralDecomposition {
  Matrix eigenvectors;
  Vector eigenvalues;

  Eigen::Index dimension() const { return eigenvalues.size(); }
  auto vector(Eigen::Index j) const { return eigenvectors.col(j); }
  double value(Eigen::Index j) const { return eigenvalues(j); }
  double spectral_radius() const {
    return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
  }
};

// Throws DomainError if `a` is not square or not symmetric (relative
// tolerance 1e-12) and NumericalError on non-finite entries.
void require_symmetric(const Matrix& a);

/// Full symmetric eigendecomposition. Deterministic for identical input.
/// Throws NumericalError for non-finite entries or when the solver fails to
/// converge (the message carries the reconstruction residual).
SpectralDecomposition decompose(const Matrix& a);

/// Decomposes every matrix; one decomposition per OpenMP worker.
std::vector<SpectralDecomposition> decompose_all(std::span<const Matrix> matrices);

/// x^T A x / x^T x. Throws DomainError when ||x|| <= kZeroTolerance.
double rayleigh_quotient(const Matrix& a, const Eigen::Ref<const Vector>& x);

/// X diag(lambda) X^T, symmetrized as (M + M^T) / 2.
Matrix reconstruct(const Matrix& x, const Vector& lambda);
Matrix reconstruct(const SpectralDecomposition& d);

double cosine_similarity(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y);

// Puts the pairs into canonical order and sign. Exposed for fixtures that
// assemble decompositions by hand.
void canonicalize(SpectralDecomposition& d);

// Dense row-major CSV, one matrix row per line.
void write_csv(std::ostream& out, const Matrix& m);

}  // namespace spevo
