#include "spevo/diagnostics.hpp"

#include "spevo/error.hpp"

#include <algorithm>
#include <cmath>

namespace spevo {

EvolutionSeries eigenvector_evolution(std::span<const SpectralDecomposition> decompositions,
                                      const SpectralDecomposition& reference,
                                      std::span<const Dimension> dimensions) {
  const Eigen::Index n = reference.dimension();
  for (const auto& d : decompositions) {
    if (d.dimension() != n) {
      throw DomainError("eigenvector_evolution: decomposition of dimension " +
                        std::to_string(d.dimension()) + " vs reference " + std::to_string(n));
    }
  }
  for (const Dimension j : dimensions) {
    if (j < 0 || j >= n) throw DomainError("eigenvector_evolution: dimension out of range");
  }

  EvolutionSeries series;
  series.dimensions.assign(dimensions.begin(), dimensions.end());
  const auto rows = static_cast<Eigen::Index>(dimensions.size());
  const auto steps = static_cast<Eigen::Index>(decompositions.size());
  series.similarity.resize(rows, steps);
  for (Eigen::Index i = 0; i < steps; ++i) {
    const auto& d = decompositions[static_cast<std::size_t>(i)];
    for (Eigen::Index r = 0; r < rows; ++r) {
      const Dimension j = dimensions[static_cast<std::size_t>(r)];
      series.similarity(r, i) = std::abs(cosine_similarity(d.vector(j), reference.vector(j)));
    }
  }
  return series;
}

Matrix stability_matrix(const SpectralDecomposition& d1, const SpectralDecomposition& dt) {
  if (d1.dimension() != dt.dimension() || d1.eigenvectors.rows() != dt.eigenvectors.rows()) {
    throw DomainError("stability_matrix: dimension mismatch");
  }
  return (d1.eigenvectors.transpose() * dt.eigenvectors).cwiseAbs().cwiseMin(1.0);
}

double diagonality_score(const Matrix& delta) {
  const double total = delta.squaredNorm();
  if (total == 0.0) return 1.0;
  return delta.diagonal().squaredNorm() / total;
}

double diagonality_score(const Matrix& delta, Eigen::Index k) {
  const Eigen::Index size = std::clamp<Eigen::Index>(k, 0, std::min(delta.rows(), delta.cols()));
  return diagonality_score(delta.topLeftCorner(size, size));
}

DiagonalityReport diagonality_test(const SpectralDecomposition& d1, const Matrix& a1,
                                   const Matrix& a2) {
  const Eigen::Index n = d1.dimension();
  if (a1.rows() != n || a1.cols() != n || a2.rows() != n || a2.cols() != n) {
    throw DomainError("diagonality_test: dimension mismatch");
  }
  const double scale = std::max(1.0, a1.cwiseAbs().maxCoeff());
  const double residual =
      (a1 * d1.eigenvectors - d1.eigenvectors * d1.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > 1e-6 * scale) {
    throw DomainError("diagonality_test: decomposition does not match the earlier matrix (residual " +
                      std::to_string(residual) + ")");
  }
  DiagonalityReport report;
  report.delta = d1.eigenvectors.transpose() * (a2 - a1) * d1.eigenvectors;
  report.score = diagonality_score(report.delta);
  return report;
}

AssumptionReport verify_assumptions(const SnapshotSequence& s, const VerifyOptions& options) {
  const std::size_t t = s.step_count();
  if (t < 2) throw DomainError("verify needs at least 2 snapshots");
  if (options.verdict_dimensions < 1) throw DomainError("verdict needs at least 1 dimension");

  AssumptionReport report;
  report.earlier_step = options.earlier_step.value_or(default_earlier_step(t));
  if (report.earlier_step < 1 || report.earlier_step >= t) {
    throw DomainError("earlier step must lie in 1.." + std::to_string(t - 1));
  }

  const auto decompositions = decompose_all(s.matrices);
  const auto& final = decompositions.back();
  const auto& earlier = decompositions[report.earlier_step - 1];

  const auto dims = select_top_fraction(final, options.fraction);
  report.spectral_evolution.resize(static_cast<Eigen::Index>(dims.size()), static_cast<Eigen::Index>(t));
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t r = 0; r < dims.size(); ++r) {
      report.spectral_evolution(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
          decompositions[i].value(dims[r]);
    }
  }
  report.evolution = eigenvector_evolution(decompositions, final, dims);
  report.stability = stability_matrix(earlier, final);
  report.diagonality = diagonality_test(earlier, s.matrices[report.earlier_step - 1], s.final());

  report.verdict_dimensions = std::min(options.verdict_dimensions, final.dimension());
  // Best match over all eigenvectors of each step, so an order swap between
  // dominant dimensions is not mistaken for a basis change.
  const auto basis = final.eigenvectors.leftCols(report.verdict_dimensions);
  for (const auto& d : decompositions) {
    const double worst = (d.eigenvectors.transpose() * basis).cwiseAbs().colwise().maxCoeff().minCoeff();
    report.min_similarity = std::min(report.min_similarity, worst);
  }
  report.verdict_score = diagonality_score(report.diagonality.delta, report.verdict_dimensions);
  report.pass = report.verdict_score >= options.pass_threshold &&
                report.min_similarity >= options.pass_threshold;
  return report;
}

}  // namespace spevo
