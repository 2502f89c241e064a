#pragma once

#include "spevo/growth_kernels.hpp"
#include "spevo/spectral.hpp"
#include "spevo/temporal_graph.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spevo {

using Dimension = Eigen::Index;  // 0-based latent dimension (column of X)

/// Per-dimension eigenvalue history over the snapshots A_1 ... A_t.
struct EigenvalueTrajectory {
  Dimension dimension = 0;
  std::vector<double> values;
};

/// Where trajectories come from.
///  - rayleigh: R(A_i, x_j) with x_j the j-th eigenvector of the final
///    snapshot, so each trajectory follows one fixed eigenvector.
///  - exact: a full decomposition of every snapshot; dimension j takes the
///    eigenvalue whose eigenvector has the largest |cosine| with x_j.
enum class TrajectorySource { rayleigh, exact };

enum class RegressionModel { linear, quadratic };

struct ForecastMethod {
  enum class Kind { two_point, linear_regression, quadratic_regression, kernel };

  Kind kind = Kind::linear_regression;
  SpectralTransform transform;  // used when kind == kernel
  TrajectorySource source = TrajectorySource::rayleigh;

  static ForecastMethod two_point(TrajectorySource s = TrajectorySource::rayleigh) {
    return {Kind::two_point, {}, s};
  }
  static ForecastMethod linear(TrajectorySource s = TrajectorySource::rayleigh) {
    return {Kind::linear_regression, {}, s};
  }
  static ForecastMethod quadratic(TrajectorySource s = TrajectorySource::rayleigh) {
    return {Kind::quadratic_regression, {}, s};
  }
  static ForecastMethod kernel(SpectralTransform f) {
    return {Kind::kernel, f, TrajectorySource::rayleigh};
  }

  /// `extrapolate`, `linreg`, `quadreg` (each optionally suffixed `:exact`)
  /// or any transform spec accepted by SpectralTransform::parse.
  static ForecastMethod parse(std::string_view spec);
  std::string to_string() const;
  bool is_kernel() const { return kind == Kind::kernel; }

  friend bool operator==(const ForecastMethod&, const ForecastMethod&) = default;
};

enum class UnselectedPolicy { keep_current, zero };

UnselectedPolicy parse_unselected_policy(std::string_view text);
std::string to_string(UnselectedPolicy p);

/// Predicted next eigenvalues for the selected dimensions only.
struct SpectrumForecast {
  std::map<Dimension, double> predicted;
  ForecastMethod method;
  double selected_fraction = 1.0;
};

/// One trajectory per selected dimension; value i is R(A_i, x_j).
/// `final` must decompose the last snapshot of `s`.
std::vector<EigenvalueTrajectory> approximate_trajectories(const SnapshotSequence& s,
                                                           const SpectralDecomposition& final,
                                                           std::span<const Dimension> selection);

/// For each column c of `basis`, the eigenvalue of `d` whose eigenvector has
/// the largest |dot| with it (first on ties).
Vector matched_eigenvalues(const SpectralDecomposition& d, const Matrix& basis);

/// Trajectories from exact per-snapshot decompositions, matched to the
/// eigenvectors of the last decomposition.
std::vector<EigenvalueTrajectory> exact_trajectories(
    std::span<const SpectralDecomposition> decompositions, std::span<const Dimension> selection);

/// Rayleigh trajectories for the given unit vectors, as a t x k matrix with
/// entry (i, c) = R(A_i, basis.col(c)). OpenMP over (snapshot, column block).
Matrix rayleigh_trajectory_matrix(std::span<const Matrix> snapshots, const Matrix& basis);

/// Earlier eigenvalue of dimension j estimated by diagonalizing a1 with the
/// later eigenvector: R(a1, (X_2)_j).
double two_point_estimate(const Matrix& a1, const SpectralDecomposition& d2, Dimension j);

/// 2 lambda2 - lambda1_hat.
double linear_extrapolate(double lambda2, double lambda1_hat);

/// Least-squares polynomial fit of values against steps 1..t, evaluated at
/// t + 1. Needs t >= 2 (linear) or t >= 3 (quadratic).
double fit_trajectory(std::span<const double> values, RegressionModel model);
double fit_trajectory(const EigenvalueTrajectory& tr, RegressionModel model);

/// The ceil(fraction * n) dimensions of largest |lambda|, ties to the lower
/// index, returned in ascending order. fraction must lie in (0, 1].
std::vector<Dimension> select_top_fraction(const SpectralDecomposition& d, double fraction);

struct ForecastOptions {
  double fraction = 1.0;
  // 1-based snapshot used as the earlier point of two-point extrapolation.
  // Default ceil(0.75 t), clamped to t - 1.
  std::optional<std::size_t> earlier_step;
  // Per-snapshot decompositions for TrajectorySource::exact. Computed on
  // demand when empty.
  std::span<const SpectralDecomposition> snapshot_decompositions;
};

/// Default earlier snapshot for two-point extrapolation (1-based).
std::size_t default_earlier_step(std::size_t t);

/// Forecasts the next spectrum. `final` must decompose s.final().
SpectrumForecast forecast_spectrum(const SnapshotSequence& s, const SpectralDecomposition& final,
                                   const ForecastMethod& method, const ForecastOptions& options = {});

/// X Lambda_hat X^T where Lambda_hat takes forecast values on the selected
/// dimensions and, elsewhere, the current eigenvalue (keep_current) or zero.
Matrix predict_scores(const SpectralDecomposition& d, const SpectrumForecast& f,
                      UnselectedPolicy policy = UnselectedPolicy::keep_current);

}  // namespace spevo
