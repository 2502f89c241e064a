#pragma once

#include "spevo/spectral.hpp"
#include "spevo/temporal_graph.hpp"
#include "spevo/trajectory.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace spevo {

/// Row j holds |cos((X_i)_j, (X_ref)_j)| for i = 1..t; `dimensions[j]` names
/// the latent dimension of row j.
struct EvolutionSeries {
  std::vector<Dimension> dimensions;
  Matrix similarity;  // dims x steps
};

EvolutionSeries eigenvector_evolution(std::span<const SpectralDecomposition> decompositions,
                                      const SpectralDecomposition& reference,
                                      std::span<const Dimension> dimensions);

/// Entry (i, j) = |(X_1)_i . (X_t)_j|.
Matrix stability_matrix(const SpectralDecomposition& d1, const SpectralDecomposition& dt);

struct DiagonalityReport {
  Matrix delta;  // X_1^T (A_2 - A_1) X_1
  double score = 1.0;
};

/// Diagonal energy ratio sum_i D_ii^2 / sum_ij D_ij^2; 1 when D = 0.
double diagonality_score(const Matrix& delta);
/// Same ratio over the leading k x k block (the k dominant dimensions).
double diagonality_score(const Matrix& delta, Eigen::Index k);

/// Change of A between two times expressed in the eigenbasis of A_1.
/// Throws DomainError on dimension mismatch or when d1 does not decompose a1.
DiagonalityReport diagonality_test(const SpectralDecomposition& d1, const Matrix& a1,
                                   const Matrix& a2);

struct VerifyOptions {
  double fraction = 0.08;  // dimensions reported in the evolution series
  // Dominant dimensions the verdict is based on. Each final eigenvector must
  // have |cosine| >= pass_threshold with some eigenvector of every snapshot,
  // and their block of Delta must have diagonality >= pass_threshold.
  Eigen::Index verdict_dimensions = 2;
  double pass_threshold = 0.9;
  std::optional<std::size_t> earlier_step;  // 1-based; default ceil(0.75 t)
};

/// Everything the `verify` command reports for one snapshot sequence.
struct AssumptionReport {
  std::size_t earlier_step = 0;
  // Top-fraction eigenvalues of every snapshot by canonical position,
  // dims x steps.
  Matrix spectral_evolution;
  EvolutionSeries evolution;
  Matrix stability;  // between the earlier step and the final step
  DiagonalityReport diagonality;
  double verdict_score = 1.0;     // diagonality of the verdict block
  double min_similarity = 1.0;    // best-match |cosine|, worst over verdict dims and steps
  Eigen::Index verdict_dimensions = 0;
  bool pass = false;
};

AssumptionReport verify_assumptions(const SnapshotSequence& s, const VerifyOptions& options = {});

}  // namespace spevo
