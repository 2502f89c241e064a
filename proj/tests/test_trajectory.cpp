#include "oracles.hpp"

#include "spevo/error.hpp"
#include "spevo/reference.hpp"
#include "spevo/trajectory.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace spevo;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<Dimension> all_dims(Eigen::Index n) {
  std::vector<Dimension> out(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = j;
  return out;
}

// A_i = X diag(base * g(i)) X^T for i = 1..t (+ the truth at t + 1).
struct GrowthFixture {
  SnapshotSequence s;
  Matrix next;
  Vector next_lambda;
};

template <class Growth>
GrowthFixture growth_fixture(std::uint64_t seed, int n, int t, Growth g) {
  oracle::Gen gen(seed);
  const Matrix x = gen.orthogonal(n);
  Vector base(n), slope(n);
  for (int j = 0; j < n; ++j) {
    base(j) = std::pow(0.8, j) * (j % 3 == 2 ? -1.0 : 1.0) * 5.0;
    slope(j) = gen.uniform(0.5, 1.5);
  }
  auto lambda_at = [&](int i) {
    Vector l(n);
    for (int j = 0; j < n; ++j) l(j) = base(j) * g(slope(j), i);
    return l;
  };
  std::vector<Matrix> mats;
  for (int i = 1; i <= t; ++i) mats.push_back(reconstruct(x, lambda_at(i)));
  return {make_sequence(std::move(mats)), reconstruct(x, lambda_at(t + 1)), lambda_at(t + 1)};
}

}  // namespace

TEST_CASE("method spec strings") {
  CHECK(ForecastMethod::parse("extrapolate") == ForecastMethod::two_point());
  CHECK(ForecastMethod::parse("linreg") == ForecastMethod::linear());
  CHECK(ForecastMethod::parse("quadreg:exact") == ForecastMethod::quadratic(TrajectorySource::exact));
  CHECK(ForecastMethod::parse("exp:auto") == ForecastMethod::kernel(SpectralTransform::exponential()));
  CHECK(ForecastMethod::parse("triangle").is_kernel());
  CHECK_THROWS_AS(ForecastMethod::parse("linreg:fast"), DomainError);
  CHECK_THROWS_AS(ForecastMethod::parse("cubic"), DomainError);
  for (const auto* spec : {"extrapolate", "linreg:exact", "quadreg", "neumann:auto", "exp:0.5"}) {
    CHECK(ForecastMethod::parse(ForecastMethod::parse(spec).to_string()) == ForecastMethod::parse(spec));
  }
  CHECK(parse_unselected_policy("keep") == UnselectedPolicy::keep_current);
  CHECK(parse_unselected_policy("zero") == UnselectedPolicy::zero);
  CHECK_THROWS_AS(parse_unselected_policy("drop"), DomainError);
}

TEST_CASE("approximate_trajectories: constant and zero-start sequences") {
  oracle::Gen gen(51);
  const Matrix a = gen.adjacency(10, 0.4);
  const auto d = decompose(a);
  const auto dims = all_dims(10);
  for (const auto& tr : approximate_trajectories(make_sequence({a, a, a}), d, dims)) {
    for (double v : tr.values) CHECK(std::abs(v - d.value(tr.dimension)) < 1e-10);
  }
  for (const auto& tr : approximate_trajectories(make_sequence({Matrix::Zero(10, 10), a}), d, dims)) {
    CHECK(tr.values.front() == 0.0);
  }
}

TEST_CASE("approximate_trajectories: 2-cycle with an extra vertex") {
  Matrix a1 = Matrix::Zero(3, 3);
  a1(0, 1) = a1(1, 0) = 1;
  Matrix a2 = a1;
  const auto d = decompose(a2);
  const Dimension top[] = {0};
  const auto trs = approximate_trajectories(make_sequence({a1, a2}), d, top);
  CHECK(trs[0].values[0] == doctest::Approx(1.0));
  CHECK(trs[0].values[1] == doctest::Approx(1.0));
}

TEST_CASE("approximate_trajectories: endpoint identity and range check (property)") {
  oracle::Gen gen(53);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = gen.integer(4, 40);
    std::vector<Matrix> mats;
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < 4; ++i) {
      a = a.cwiseMax(gen.adjacency(n, 0.1));
      mats.push_back(a);
    }
    const auto s = make_sequence(mats);
    const auto d = decompose(s.final());
    for (const auto& tr : approximate_trajectories(s, d, all_dims(n))) {
      CHECK(std::abs(tr.values.back() - d.value(tr.dimension)) <= 1e-10);
    }
    const Dimension bad[] = {n};
    CHECK_THROWS_AS(approximate_trajectories(s, d, bad), DomainError);
  }
}

TEST_CASE("rayleigh_trajectory_matrix matches the serial reference (property)") {
  oracle::Gen gen(59);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = gen.integer(5, 60);
    std::vector<Matrix> mats;
    for (int i = 0; i < 5; ++i) mats.push_back(gen.adjacency(n, 0.2));
    Matrix basis(n, gen.integer(1, n));
    for (Eigen::Index c = 0; c < basis.cols(); ++c) basis.col(c) = gen.vector(n);
    const Matrix par = rayleigh_trajectory_matrix(mats, basis);
    const Matrix ser = reference::rayleigh_trajectory_matrix(mats, basis);
    CHECK(max_abs(par - ser) <= 1e-12 * std::max(1.0, max_abs(ser)));
  }
}

TEST_CASE("two_point_estimate") {
  oracle::Gen gen(61);
  const Matrix a2 = gen.adjacency(12, 0.3);
  const auto d2 = decompose(a2);
  for (Dimension j = 0; j < 12; ++j) {
    CHECK(std::abs(two_point_estimate(a2, d2, j) - d2.value(j)) < 1e-10);
    CHECK(two_point_estimate(Matrix::Zero(12, 12), d2, j) == 0.0);
    CHECK(std::abs(two_point_estimate(0.5 * a2, d2, j) - 0.5 * d2.value(j)) < 1e-10);
  }
  CHECK_THROWS_AS(two_point_estimate(Matrix::Zero(3, 3), d2, 0), DomainError);
}

TEST_CASE("linear_extrapolate") {
  CHECK(linear_extrapolate(5, 3) == 7);
  CHECK(linear_extrapolate(2.5, 2.5) == 2.5);
  CHECK(linear_extrapolate(0, 4) == -4);
}

TEST_CASE("fit_trajectory: examples and errors") {
  const std::vector<double> line{1, 2, 3, 4};
  const std::vector<double> squares{1, 4, 9, 16};
  CHECK(fit_trajectory(line, RegressionModel::linear) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(fit_trajectory(squares, RegressionModel::quadratic) == doctest::Approx(25.0).epsilon(1e-12));
  const std::vector<double> flat(6, 3.25);
  CHECK(fit_trajectory(flat, RegressionModel::linear) == doctest::Approx(3.25));
  CHECK(fit_trajectory(flat, RegressionModel::quadratic) == doctest::Approx(3.25));
  const std::vector<double> one{1}, two{1, 2};
  CHECK_THROWS_AS(fit_trajectory(one, RegressionModel::linear), DomainError);
  CHECK_THROWS_AS(fit_trajectory(two, RegressionModel::quadratic), DomainError);
}

TEST_CASE("fit_trajectory agrees with the normal-equation oracle (property)") {
  oracle::Gen gen(67);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> values(static_cast<std::size_t>(gen.integer(3, 15)));
    for (auto& v : values) v = gen.uniform(-5, 5);
    for (const auto model : {RegressionModel::linear, RegressionModel::quadratic}) {
      const int degree = model == RegressionModel::linear ? 1 : 2;
      CHECK(std::abs(fit_trajectory(values, model) - oracle::polyfit_next(values, degree)) <= 1e-8);
    }
  }
}

TEST_CASE("select_top_fraction") {
  oracle::Gen gen(71);
  const auto d100 = decompose(gen.symmetric(100));
  CHECK(select_top_fraction(d100, 0.08).size() == 8);
  CHECK(select_top_fraction(d100, 1.0).size() == 100);
  const auto d10 = decompose(gen.symmetric(10));
  CHECK(select_top_fraction(d10, 0.25).size() == 3);
  CHECK(select_top_fraction(d10, 0.1).size() == 1);
  CHECK_THROWS_AS(select_top_fraction(d10, 0.0), DomainError);
  CHECK_THROWS_AS(select_top_fraction(d10, 1.5), DomainError);

  Vector lam(4);
  lam << 1, -3, 3, 2;
  const SpectralDecomposition hand{Matrix::Identity(4, 4), lam};
  CHECK(select_top_fraction(hand, 0.5) == std::vector<Dimension>{1, 2});
  CHECK(select_top_fraction(hand, 0.75) == std::vector<Dimension>{1, 2, 3});
}

TEST_CASE("select_top_fraction is monotone in the fraction (property)") {
  oracle::Gen gen(73);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = decompose(gen.adjacency(gen.integer(3, 50), 0.3));
    double f1 = gen.uniform(0.01, 1.0), f2 = gen.uniform(0.01, 1.0);
    if (f1 > f2) std::swap(f1, f2);
    const auto small = select_top_fraction(d, f1);
    const auto large = select_top_fraction(d, f2);
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST_CASE("default_earlier_step") {
  CHECK(default_earlier_step(10) == 8);
  CHECK(default_earlier_step(4) == 3);
  CHECK(default_earlier_step(2) == 1);
  CHECK_THROWS_AS(default_earlier_step(1), DomainError);
}

TEST_CASE("stationary sequence: every method keeps the spectrum") {
  oracle::Gen gen(79);
  const Matrix a = gen.adjacency(15, 0.3);
  const auto s = make_sequence({a, a, a, a});
  const auto d = decompose(a);
  for (const auto* spec : {"extrapolate", "linreg", "quadreg", "extrapolate:exact", "linreg:exact",
                           "quadreg:exact"}) {
    const auto f = forecast_spectrum(s, d, ForecastMethod::parse(spec));
    REQUIRE(f.predicted.size() == 15);
    for (const auto& [j, v] : f.predicted) CHECK(std::abs(v - d.value(j)) < 1e-8);
    CHECK(max_abs(predict_scores(d, f) - a) < 1e-8);
  }
}

TEST_CASE("exact-model recovery with fixed eigenvectors") {
  SUBCASE("linear growth") {
    const auto fx = growth_fixture(83, 30, 8, [](double u, int i) { return 1.0 + 0.3 * u * (i - 1); });
    const auto d = decompose(fx.s.final());
    const auto f = forecast_spectrum(fx.s, d, ForecastMethod::linear());
    for (const auto& [j, v] : f.predicted) {
      const double want = rayleigh_quotient(fx.next, d.vector(j));
      CHECK(std::abs(v - want) <= 1e-6);
    }
    CHECK(max_abs(predict_scores(d, f) - fx.next) <= 1e-6);
    const auto two = forecast_spectrum(fx.s, d, ForecastMethod::two_point());
    CHECK(max_abs(predict_scores(d, two) - fx.next) > 1e-3);
  }
  SUBCASE("quadratic growth") {
    const auto fx =
        growth_fixture(89, 30, 8, [](double u, int i) { return 1.0 + 0.05 * u * (i - 1) * (i - 1); });
    const auto d = decompose(fx.s.final());
    const auto f = forecast_spectrum(fx.s, d, ForecastMethod::quadratic());
    CHECK(max_abs(predict_scores(d, f) - fx.next) <= 1e-6);
    const auto lin = forecast_spectrum(fx.s, d, ForecastMethod::linear());
    CHECK(max_abs(predict_scores(d, lin) - fx.next) > 1e-3);
  }
  SUBCASE("two-point on uniform growth") {
    // lambda(i) = i * lambda0, earlier step 8 of 10: 2 * 10 - 8 = 12 != 11,
    // so the rule is exact only when the earlier step is t - 1.
    const auto fx = growth_fixture(97, 20, 10, [](double, int i) { return static_cast<double>(i); });
    const auto d = decompose(fx.s.final());
    ForecastOptions options;
    options.earlier_step = 9;
    const auto f = forecast_spectrum(fx.s, d, ForecastMethod::two_point(), options);
    CHECK(max_abs(predict_scores(d, f) - fx.next) <= 1e-6);
  }
}

TEST_CASE("fractional forecasts and unselected policies") {
  const auto fx = growth_fixture(101, 50, 6, [](double u, int i) { return 1.0 + 0.2 * u * (i - 1); });
  const auto d = decompose(fx.s.final());
  ForecastOptions options;
  options.fraction = 0.08;
  const auto f = forecast_spectrum(fx.s, d, ForecastMethod::linear(), options);
  const auto selected = select_top_fraction(d, 0.08);
  REQUIRE(f.predicted.size() == 4);
  for (const Dimension j : selected) CHECK(f.predicted.count(j) == 1);

  const Matrix keep = predict_scores(d, f, UnselectedPolicy::keep_current);
  const Matrix zero = predict_scores(d, f, UnselectedPolicy::zero);
  CHECK(keep == keep.transpose());
  CHECK(zero == zero.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(zero);
  const auto nonzero = (es.eigenvalues().array().abs() > 1e-8).count();
  CHECK(nonzero <= 4);
  // keep_current differs from the current matrix only on the selected dimensions.
  Matrix delta = fx.s.final();
  for (const Dimension j : selected) {
    delta += (f.predicted.at(j) - d.value(j)) * d.vector(j) * d.vector(j).transpose();
  }
  CHECK(max_abs(keep - delta) < 1e-8);
}

TEST_CASE("kernel forecasts delegate to the transform") {
  oracle::Gen gen(103);
  const Matrix a = gen.adjacency(12, 0.3);
  const auto d = decompose(a);
  const auto s = make_sequence({a});
  const auto f = forecast_spectrum(s, d, ForecastMethod::parse("triangle"));
  CHECK(max_abs(predict_scores(d, f) - a * a) < 1e-8);
}

TEST_CASE("forecast errors") {
  oracle::Gen gen(107);
  const Matrix a = gen.adjacency(8, 0.4);
  const auto d = decompose(a);
  const auto one = make_sequence({a});
  CHECK_THROWS_AS(forecast_spectrum(one, d, ForecastMethod::two_point()), DomainError);
  CHECK_THROWS_AS(forecast_spectrum(make_sequence({a, a}), d, ForecastMethod::quadratic()),
                  DomainError);
  ForecastOptions options;
  options.earlier_step = 2;
  CHECK_THROWS_AS(forecast_spectrum(make_sequence({a, a}), d, ForecastMethod::two_point(), options),
                  DomainError);
}

TEST_CASE("exact trajectories follow matched eigenvectors") {
  // Two dimensions swap order between snapshots: sorted positions would mix
  // them, matching by eigenvector keeps each trajectory on its own vector.
  Matrix x = Matrix::Identity(3, 3);
  Vector l1(3), l2(3);
  l1 << 3, 2, 1;
  l2 << 2, 4, 1;
  const auto s = make_sequence({reconstruct(x, l1), reconstruct(x, l2)});
  const auto decs = decompose_all(s.matrices);
  const Dimension dims[] = {0, 1};
  const auto trs = exact_trajectories(decs, dims);
  // Final dimension 0 is the vector e2 (value 4), which had value 2 before.
  CHECK(trs[0].values == std::vector<double>{2, 4});
  CHECK(trs[1].values == std::vector<double>{3, 2});
  const auto approx = approximate_trajectories(s, decs.back(), dims);
  CHECK(approx[0].values[0] == doctest::Approx(2.0));
  CHECK(approx[1].values[0] == doctest::Approx(3.0));
}
