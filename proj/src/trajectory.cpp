#include "spevo/trajectory.hpp"

#include "spevo/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spevo {

namespace {

constexpr Eigen::Index kColumnBlock = 16;

void require_dimensions(std::span<const Dimension> selection, Eigen::Index n) {
  for (const Dimension j : selection) {
    if (j < 0 || j >= n) {
      throw DomainError("dimension index " + std::to_string(j) + " outside 0.." +
                        std::to_string(n - 1));
    }
  }
}

}  // namespace

ForecastMethod ForecastMethod::parse(std::string_view spec) {
  auto source = TrajectorySource::rayleigh;
  std::string_view head = spec;
  if (const auto colon = spec.find(':'); colon != std::string_view::npos) {
    const auto tail = spec.substr(colon + 1);
    const auto base = spec.substr(0, colon);
    if (base == "extrapolate" || base == "linreg" || base == "quadreg") {
      if (tail != "exact") {
        throw DomainError("unknown trajectory source '" + std::string(tail) + "' in '" +
                          std::string(spec) + "'");
      }
      source = TrajectorySource::exact;
      head = base;
    }
  }
  if (head == "extrapolate") return two_point(source);
  if (head == "linreg") return linear(source);
  if (head == "quadreg") return quadratic(source);
  return kernel(SpectralTransform::parse(spec));
}

std::string ForecastMethod::to_string() const {
  std::string name;
  switch (kind) {
    case Kind::two_point:
      name = "extrapolate";
      break;
    case Kind::linear_regression:
      name = "linreg";
      break;
    case Kind::quadratic_regression:
      name = "quadreg";
      break;
    case Kind::kernel:
      return transform.to_string();
  }
  if (source == TrajectorySource::exact) name += ":exact";
  return name;
}

UnselectedPolicy parse_unselected_policy(std::string_view text) {
  if (text == "keep" || text == "keep_current") return UnselectedPolicy::keep_current;
  if (text == "zero") return UnselectedPolicy::zero;
  throw DomainError("unknown unselected policy '" + std::string(text) + "' (expected keep|zero)");
}

std::string to_string(UnselectedPolicy p) {
  return p == UnselectedPolicy::keep_current ? "keep" : "zero";
}

Matrix rayleigh_trajectory_matrix(std::span<const Matrix> snapshots, const Matrix& basis) {
  const auto t = static_cast<Eigen::Index>(snapshots.size());
  const Eigen::Index k = basis.cols();
  const Eigen::Index n = basis.rows();
  for (const auto& a : snapshots) {
    if (a.rows() != n || a.cols() != n) {
      throw DomainError("rayleigh_trajectory_matrix: snapshot dimension " +
                        std::to_string(a.rows()) + " does not match basis rows " +
                        std::to_string(n));
    }
  }
  const Vector norms = basis.colwise().squaredNorm().transpose();
  for (Eigen::Index c = 0; c < k; ++c) {
    if (std::sqrt(norms(c)) <= kZeroTolerance) {
      throw DomainError("rayleigh_trajectory_matrix: zero basis vector at column " +
                        std::to_string(c));
    }
  }

  Matrix values(t, k);
  const Eigen::Index blocks = (k + kColumnBlock - 1) / kColumnBlock;
  const Eigen::Index tasks = t * blocks;
#pragma omp parallel for schedule(dynamic, 1)
  for (Eigen::Index task = 0; task < tasks; ++task) {
    const Eigen::Index i = task / blocks;
    const Eigen::Index first = (task % blocks) * kColumnBlock;
    const Eigen::Index width = std::min(kColumnBlock, k - first);
    const auto x = basis.middleCols(first, width);
    const Matrix ax = snapshots[static_cast<std::size_t>(i)] * x;
    for (Eigen::Index c = 0; c < width; ++c) {
      values(i, first + c) = x.col(c).dot(ax.col(c)) / norms(first + c);
    }
  }
  return values;
}

std::vector<EigenvalueTrajectory> approximate_trajectories(const SnapshotSequence& s,
                                                           const SpectralDecomposition& final,
                                                           std::span<const Dimension> selection) {
  if (s.step_count() == 0) throw DomainError("approximate_trajectories: empty sequence");
  const Eigen::Index n = final.dimension();
  if (s.dimension() != n) {
    throw DomainError("approximate_trajectories: decomposition dimension " + std::to_string(n) +
                      " does not match snapshots " + std::to_string(s.dimension()));
  }
  require_dimensions(selection, n);

  Matrix basis(n, static_cast<Eigen::Index>(selection.size()));
  for (std::size_t c = 0; c < selection.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = final.vector(selection[c]);
  }
  const Matrix values = rayleigh_trajectory_matrix(s.matrices, basis);

  std::vector<EigenvalueTrajectory> out(selection.size());
  for (std::size_t c = 0; c < selection.size(); ++c) {
    out[c].dimension = selection[c];
    const auto column = values.col(static_cast<Eigen::Index>(c));
    out[c].values.assign(column.data(), column.data() + column.size());
  }
  return out;
}

Vector matched_eigenvalues(const SpectralDecomposition& d, const Matrix& basis) {
  if (d.eigenvectors.rows() != basis.rows()) {
    throw DomainError("matched_eigenvalues: dimension mismatch");
  }
  const Matrix overlap = (d.eigenvectors.transpose() * basis).cwiseAbs();
  Vector out(basis.cols());
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    Eigen::Index best = 0;
    overlap.col(c).maxCoeff(&best);  // first maximum on ties
    out(c) = d.value(best);
  }
  return out;
}

std::vector<EigenvalueTrajectory> exact_trajectories(
    std::span<const SpectralDecomposition> decompositions, std::span<const Dimension> selection) {
  if (decompositions.empty()) throw DomainError("exact_trajectories: no decompositions");
  const auto& final = decompositions.back();
  const Eigen::Index n = final.dimension();
  for (const auto& d : decompositions) {
    if (d.dimension() != n) throw DomainError("exact_trajectories: dimension mismatch");
  }
  require_dimensions(selection, n);

  const auto k = static_cast<Eigen::Index>(selection.size());
  Matrix basis(n, k);
  for (Eigen::Index c = 0; c < k; ++c) basis.col(c) = final.vector(selection[static_cast<std::size_t>(c)]);

  const auto t = static_cast<std::ptrdiff_t>(decompositions.size());
  Matrix values(t, k);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < t; ++i) {
    values.row(i) = matched_eigenvalues(decompositions[static_cast<std::size_t>(i)], basis).transpose();
  }

  std::vector<EigenvalueTrajectory> out(selection.size());
  for (std::size_t c = 0; c < selection.size(); ++c) {
    out[c].dimension = selection[c];
    const auto column = values.col(static_cast<Eigen::Index>(c));
    out[c].values.assign(column.data(), column.data() + column.size());
  }
  return out;
}

double two_point_estimate(const Matrix& a1, const SpectralDecomposition& d2, Dimension j) {
  if (a1.rows() != d2.dimension() || a1.cols() != d2.dimension()) {
    throw DomainError("two_point_estimate: matrix dimension " + std::to_string(a1.rows()) +
                      " does not match decomposition " + std::to_string(d2.dimension()));
  }
  const Dimension dims[] = {j};
  require_dimensions(dims, d2.dimension());
  return rayleigh_quotient(a1, d2.vector(j));
}

double linear_extrapolate(double lambda2, double lambda1_hat) { return 2.0 * lambda2 - lambda1_hat; }

double fit_trajectory(std::span<const double> values, RegressionModel model) {
  const int degree = model == RegressionModel::linear ? 1 : 2;
  const auto t = static_cast<Eigen::Index>(values.size());
  if (t < degree + 1) {
    throw DomainError(std::string(model == RegressionModel::linear ? "linear" : "quadratic") +
                      " regression needs at least " + std::to_string(degree + 1) +
                      " points, got " + std::to_string(t));
  }
  // Centered abscissa keeps the Vandermonde system well conditioned.
  const double center = 0.5 * static_cast<double>(t + 1);
  Matrix design(t, degree + 1);
  Vector rhs(t);
  for (Eigen::Index i = 0; i < t; ++i) {
    const double x = static_cast<double>(i + 1) - center;
    double power = 1.0;
    for (int p = 0; p <= degree; ++p) {
      design(i, p) = power;
      power *= x;
    }
    rhs(i) = values[static_cast<std::size_t>(i)];
  }
  const Vector coeffs = design.colPivHouseholderQr().solve(rhs);
  const double x = static_cast<double>(t + 1) - center;
  double result = 0.0;
  for (int p = degree; p >= 0; --p) result = result * x + coeffs(p);
  return result;
}

double fit_trajectory(const EigenvalueTrajectory& tr, RegressionModel model) {
  return fit_trajectory(tr.values, model);
}

std::vector<Dimension> select_top_fraction(const SpectralDecomposition& d, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw DomainError("fraction must lie in (0, 1], got " + std::to_string(fraction));
  }
  const Eigen::Index n = d.dimension();
  // The epsilon keeps products such as 0.07 * 100 from rounding up to 8.
  const auto wanted = static_cast<Eigen::Index>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  const Eigen::Index k = std::clamp<Eigen::Index>(wanted, n > 0 ? 1 : 0, n);

  std::vector<Dimension> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Dimension{0});
  std::stable_sort(order.begin(), order.end(), [&](Dimension a, Dimension b) {
    return std::abs(d.value(a)) > std::abs(d.value(b));
  });
  order.resize(static_cast<std::size_t>(k));
  std::sort(order.begin(), order.end());
  return order;
}

std::size_t default_earlier_step(std::size_t t) {
  if (t < 2) throw DomainError("two-point extrapolation needs at least 2 snapshots");
  const auto step = static_cast<std::size_t>(std::ceil(0.75 * static_cast<double>(t)));
  return std::clamp<std::size_t>(step, 1, t - 1);
}

SpectrumForecast forecast_spectrum(const SnapshotSequence& s, const SpectralDecomposition& final,
                                   const ForecastMethod& method, const ForecastOptions& options) {
  const auto selection = select_top_fraction(final, options.fraction);
  SpectrumForecast forecast{{}, method, options.fraction};
  const std::size_t t = s.step_count();
  if (t == 0) throw DomainError("forecast_spectrum: empty snapshot sequence");
  if (s.dimension() != final.dimension()) {
    throw DomainError("forecast_spectrum: decomposition does not match snapshot dimension");
  }

  std::vector<SpectralDecomposition> computed;
  auto decompositions = [&]() -> std::span<const SpectralDecomposition> {
    if (!options.snapshot_decompositions.empty()) {
      if (options.snapshot_decompositions.size() != t) {
        throw DomainError("forecast_spectrum: expected " + std::to_string(t) +
                          " snapshot decompositions, got " +
                          std::to_string(options.snapshot_decompositions.size()));
      }
      return options.snapshot_decompositions;
    }
    if (computed.empty()) computed = decompose_all(s.matrices);
    return computed;
  };

  switch (method.kind) {
    case ForecastMethod::Kind::kernel: {
      const Vector transformed = transform_spectrum(final, method.transform);
      for (const Dimension j : selection) forecast.predicted[j] = transformed(j);
      break;
    }
    case ForecastMethod::Kind::two_point: {
      const std::size_t earlier = options.earlier_step.value_or(default_earlier_step(t));
      if (earlier < 1 || earlier >= t) {
        throw DomainError("two-point extrapolation: earlier step " + std::to_string(earlier) +
                          " must lie in 1.." + std::to_string(t - 1));
      }
      const Matrix& a1 = s.matrices[earlier - 1];
      Matrix basis(final.dimension(), static_cast<Eigen::Index>(selection.size()));
      for (std::size_t c = 0; c < selection.size(); ++c) {
        basis.col(static_cast<Eigen::Index>(c)) = final.vector(selection[c]);
      }
      Vector earlier_values;
      if (method.source == TrajectorySource::exact) {
        earlier_values = options.snapshot_decompositions.empty()
                             ? matched_eigenvalues(decompose(a1), basis)
                             : matched_eigenvalues(decompositions()[earlier - 1], basis);
      } else {
        earlier_values = rayleigh_trajectory_matrix(std::span(&a1, 1), basis).row(0).transpose();
      }
      for (std::size_t c = 0; c < selection.size(); ++c) {
        forecast.predicted[selection[c]] = linear_extrapolate(
            final.value(selection[c]), earlier_values(static_cast<Eigen::Index>(c)));
      }
      break;
    }
    case ForecastMethod::Kind::linear_regression:
    case ForecastMethod::Kind::quadratic_regression: {
      const auto model = method.kind == ForecastMethod::Kind::linear_regression
                             ? RegressionModel::linear
                             : RegressionModel::quadratic;
      const auto trajectories = method.source == TrajectorySource::exact
                                    ? exact_trajectories(decompositions(), selection)
                                    : approximate_trajectories(s, final, selection);
      for (const auto& tr : trajectories) forecast.predicted[tr.dimension] = fit_trajectory(tr, model);
      break;
    }
  }
  return forecast;
}

Matrix predict_scores(const SpectralDecomposition& d, const SpectrumForecast& f,
                      UnselectedPolicy policy) {
  Vector lambda = policy == UnselectedPolicy::keep_current ? d.eigenvalues
                                                           : Vector::Zero(d.dimension());
  for (const auto& [j, value] : f.predicted) {
    if (j < 0 || j >= d.dimension()) {
      throw DomainError("forecast dimension " + std::to_string(j) + " outside decomposition");
    }
    lambda(j) = value;
  }
  return reconstruct(d.eigenvectors, lambda);
}

}  // namespace spevo
