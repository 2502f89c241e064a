// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any gating criterion fails.

#include "oracles.hpp"

#include "spevo/diagnostics.hpp"
#include "spevo/evaluation.hpp"
#include "spevo/growth_kernels.hpp"
#include "spevo/synthetic.hpp"
#include "spevo/trajectory.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace spevo;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, bool gating, const std::function<Outcome()>& body) {
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  if (!out.pass && gating) ++failures;
  std::printf("criterion %2d: %s %s (%s)%s\n", id, out.pass ? "PASS" : "FAIL", name,
              out.detail.c_str(), gating ? "" : " [informational]");
  std::fflush(stdout);
}

std::string fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

SnapshotSequence step_snapshots(const SyntheticNetwork& net) {
  std::vector<double> cuts;
  for (std::size_t i = 1; i <= net.truth.steps(); ++i) cuts.push_back(static_cast<double>(i));
  return build_snapshots_at(net.graph, cuts);
}

SpectralScenario irregular_fixture(std::uint64_t seed) {
  SpectralScenario sc;
  sc.n = 200;
  sc.steps = 10;
  sc.seed = seed;
  sc.trajectory = TrajectorySpec::parse("irregular:0.1");
  sc.density = 0.05;
  sc.decay = 0.9;
  sc.max_repair_fraction = 1.0;
  return sc;
}

SpectralScenario stable_fixture(std::uint64_t seed) {
  SpectralScenario sc;
  sc.n = 200;
  sc.steps = 10;
  sc.seed = seed;
  sc.trajectory = TrajectorySpec::parse("linear:0.02");
  sc.density = 0.05;
  sc.decay = 0.7;
  return sc;
}

// Decompositions of random symmetric 0/1 matrices shared by criteria 1 and 2.
struct DecompositionCase {
  Matrix a;
  SpectralDecomposition d;
};

std::vector<DecompositionCase> decomposition_cases;

Outcome criterion1() {
  oracle::Gen gen(2024);
  const int sizes[] = {10, 50, 200};
  double worst_orth = 0, worst_rec = 0, worst_trace = 0;
  const auto start = Clock::now();
  for (int k = 0; k < 50; ++k) {
    const int n = sizes[k % 3];
    Matrix a = gen.adjacency(n, gen.uniform(0.05, 0.5));
    auto d = decompose(a);
    worst_orth = std::max(worst_orth, max_abs(d.eigenvectors.transpose() * d.eigenvectors -
                                              Matrix::Identity(n, n)));
    worst_rec = std::max(worst_rec, max_abs(a - reconstruct(d)) / std::max(1.0, max_abs(a)));
    worst_trace = std::max(worst_trace, std::abs(a.trace() - d.eigenvalues.sum()));
    decomposition_cases.push_back({std::move(a), std::move(d)});
  }
  const double elapsed = seconds_since(start);
  return {worst_orth <= 1e-8 && worst_rec <= 1e-8 && worst_trace <= 1e-6 && elapsed < 30.0,
          fmt("orthonormality %.2e, reconstruction %.2e, trace %.2e, %.2f s", worst_orth, worst_rec,
              worst_trace, elapsed)};
}

Outcome criterion2() {
  oracle::Gen gen(7);
  double worst_rq = 0, lo = 1, hi = 0;
  for (const auto& [a, d] : decomposition_cases) {
    for (Eigen::Index j = 0; j < d.dimension(); ++j) {
      worst_rq = std::max(worst_rq, std::abs(rayleigh_quotient(a, d.vector(j)) - d.value(j)));
    }
    const Vector x = d.vector(0);
    Vector p = gen.vector(static_cast<int>(x.size()));
    p -= p.dot(x) * x;
    p.normalize();
    const double e1 = std::abs(rayleigh_quotient(a, x + 1e-2 * p) - d.value(0));
    const double e2 = std::abs(rayleigh_quotient(a, x + 5e-3 * p) - d.value(0));
    const double ratio = e2 / e1;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {worst_rq <= 1e-8 && lo >= 0.15 && hi <= 0.35,
          fmt("max |R - lambda| %.2e, halving ratio in [%.4f, %.4f]", worst_rq, lo, hi)};
}

Outcome criterion3() {
  oracle::Gen gen(99);
  double tri = 0, ex = 0, neu = 0;
  for (int k = 0; k < 20; ++k) {
    const int n = gen.integer(2, 20);
    const Matrix a = gen.adjacency(n, gen.uniform(0.1, 0.7));
    const auto d = decompose(a);
    tri = std::max(tri, max_abs(apply_transform(d, SpectralTransform::triangle()) - a * a));
    ex = std::max(ex, max_abs(apply_transform(d, SpectralTransform::exponential(0.2)) -
                              oracle::exp_taylor(a, 0.2)));
    if (d.spectral_radius() > 0) {
      const double alpha = 0.5 / d.spectral_radius();
      neu = std::max(neu, max_abs(apply_transform(d, SpectralTransform::neumann(alpha)) -
                                  oracle::neumann_inverse(a, alpha)));
    }
  }
  return {tri <= 1e-8 && ex <= 1e-8 && neu <= 1e-8,
          fmt("triangle %.2e, exponential %.2e, Neumann %.2e", tri, ex, neu)};
}

Outcome criterion4() {
  double worst_lambda = 0, worst_scores = 0;
  const auto start = Clock::now();
  for (const auto& [spec, method] : {std::pair{"linear:0.1", ForecastMethod::linear()},
                                     std::pair{"quadratic:0.01", ForecastMethod::quadratic()}}) {
    SpectralScenario sc;
    sc.n = 100;
    sc.steps = 10;
    sc.seed = 4;
    sc.trajectory = TrajectorySpec::parse(spec);
    sc.max_repair_fraction = 1.0;
    const auto net = generate_spectral_network(sc);
    const auto s = spectral_sequence(net.truth);
    const auto d = decompose(s.final());
    const auto f = forecast_spectrum(s, d, method);
    const Matrix overlap = (d.eigenvectors.transpose() * net.truth.basis).cwiseAbs();
    for (const auto& [j, value] : f.predicted) {
      Eigen::Index k = 0;
      overlap.row(j).maxCoeff(&k);
      worst_lambda = std::max(worst_lambda, std::abs(value - net.truth.eigenvalues(k, 10)));
    }
    worst_scores = std::max(worst_scores, max_abs(predict_scores(d, f) - net.truth.spectral_matrix(11)));
  }
  const double elapsed = seconds_since(start);
  return {worst_lambda <= 1e-6 && worst_scores <= 1e-6 && elapsed < 10.0,
          fmt("max eigenvalue error %.2e, max score error %.2e, %.2f s", worst_lambda, worst_scores,
              elapsed)};
}

Outcome criterion5() {
  double worst = 1, worst_baseline = 1;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto net = generate_spectral_network(stable_fixture(seed));
    const auto s = step_snapshots(net);
    const auto d = decompose(s.final());
    ForecastOptions options;
    options.fraction = 0.08;
    const auto f = forecast_spectrum(s, d, ForecastMethod::linear(), options);
    const Matrix predicted = threshold_predict(predict_scores(d, f, UnselectedPolicy::keep_current), 0.5);
    const auto n = static_cast<double>(predicted.rows());
    const double entries = n * (n - 1);
    const double wrong = (predicted - net.truth.held_out).cwiseAbs().sum();
    const double stale = (s.final() - net.truth.held_out).cwiseAbs().sum();
    worst = std::min(worst, 1.0 - wrong / entries);
    worst_baseline = std::min(worst_baseline, 1.0 - stale / entries);
  }
  return {worst >= 0.99, fmt("min accuracy %.4f over 3 seeds; unchanged A_t scores %.4f", worst,
                             worst_baseline)};
}

std::vector<EvaluationReport> cached_irregular_reports;

Outcome criterion6() {
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto net = generate_spectral_network(irregular_fixture(seed));
    BenchmarkConfig config;
    config.network = "irregular-" + std::to_string(seed);
    config.seed = seed;
    for (const auto* m : {"linreg", "linreg:exact", "quadreg", "quadreg:exact"}) {
      config.methods.push_back(ForecastMethod::parse(m));
    }
    const auto r = run_benchmark(net.graph, config);
    if (r.any_failed()) return {false, "a method failed on seed " + std::to_string(seed)};
    worst = std::max(worst, std::abs(*r.cells[0].auc - *r.cells[1].auc));
    worst = std::max(worst, std::abs(*r.cells[2].auc - *r.cells[3].auc));
  }
  return {worst <= 0.05, fmt("max |AUC(Rayleigh) - AUC(exact)| = %.4f over 5 seeds", worst)};
}

Outcome criterion7() {
  double trajectory_sum = 0, kernel_sum = 0;
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto net = generate_spectral_network(irregular_fixture(seed));
    BenchmarkConfig config;
    config.seed = seed;
    for (const auto* m : {"extrapolate", "linreg", "quadreg", "triangle", "exp:auto", "neumann:auto"}) {
      config.methods.push_back(ForecastMethod::parse(m));
    }
    const auto r = run_benchmark(net.graph, config);
    if (r.any_failed()) return {false, "a method failed on seed " + std::to_string(seed)};
    double traj = 0, kern = 0;
    for (std::size_t k = 0; k < 3; ++k) traj += *r.cells[k].auc / 3.0;
    for (std::size_t k = 3; k < 6; ++k) kern += *r.cells[k].auc / 3.0;
    trajectory_sum += traj;
    kernel_sum += kern;
    wins += traj > kern ? 1 : 0;
  }
  const double traj = trajectory_sum / 10.0, kern = kernel_sum / 10.0;
  return {traj > kern, fmt("mean AUC trajectory %.4f vs kernels %.4f; trajectory ahead on %.0f/10 seeds",
                           traj, kern, wins)};
}

Outcome criterion8() {
  double min_score = 1, min_similarity = 1;
  int passes = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto net = generate_spectral_network(stable_fixture(seed));
    const auto r = verify_assumptions(step_snapshots(net));
    min_score = std::min(min_score, r.verdict_score);
    min_similarity = std::min(min_similarity, r.min_similarity);
    passes += r.pass ? 1 : 0;
  }
  auto sc = stable_fixture(1);
  sc.rotate_at = sc.steps / 2;
  sc.max_repair_fraction = 1.0;
  const auto rotated = verify_assumptions(step_snapshots(generate_spectral_network(sc)));
  return {passes == 10 && min_score >= 0.9 && min_similarity >= 0.9 && !rotated.pass,
          fmt("fixed basis: %.0f/10 PASS, min diagonality %.4f, min similarity %.4f; rotated: similarity %.4f",
              passes, min_score, min_similarity, rotated.min_similarity) +
              (rotated.pass ? " PASS" : " FAIL")};
}

Outcome criterion9() {
  const auto net = generate_spectral_network(irregular_fixture(3));
  BenchmarkConfig config;
  config.network = "determinism";
  config.seed = 11;
  config.ratios = {0.75, 0.8};
  for (const auto* m : {"triangle", "exp:auto", "neumann:auto", "extrapolate", "linreg", "quadreg"}) {
    config.methods.push_back(ForecastMethod::parse(m));
  }
  std::ostringstream a, b;
  write_report_json(a, run_benchmark(net.graph, config), false);
  write_report_json(b, run_benchmark(net.graph, config), false);
  return {a.str() == b.str(), fmt("%.0f bytes per report", static_cast<double>(a.str().size()))};
}

Outcome criterion10() {
  const PairSet pos{{1, 2}, {1, 3}}, neg{{2, 3}, {3, 4}};
  Matrix perfect = Matrix::Zero(4, 4);
  perfect(0, 1) = perfect(1, 0) = 0.9;
  perfect(0, 2) = perfect(2, 0) = 0.8;
  const double auc_perfect = auc_roc(perfect, pos, neg);
  const double auc_ties = auc_roc(Matrix::Constant(4, 4, 1.0), pos, neg);

  oracle::Gen gen(10);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen.integer(4, 25);
    Matrix s = Matrix::Zero(n, n);
    PairSet p, q;
    for (int u = 1; u <= n; ++u) {
      for (int v = u + 1; v <= n; ++v) {
        s(u - 1, v - 1) = s(v - 1, u - 1) = trial % 2 ? gen.integer(0, 4) : gen.normal();
        const double r = gen.uniform();
        if (r < 0.3) p.emplace(u, v);
        else if (r < 0.6) q.emplace(u, v);
      }
    }
    if (p.empty() || q.empty()) p = {{1, 2}}, q = {{1, 3}};
    worst = std::max(worst, std::abs(auc_roc(s, p, q) + auc_roc(s, q, p) - 1.0));
  }
  return {auc_perfect == 1.0 && auc_ties == 0.5 && worst <= 1e-12,
          fmt("perfect %.1f, ties %.1f, max |AUC + swapped - 1| = %.1e", auc_perfect, auc_ties, worst)};
}

double predict_pipeline_seconds(std::size_t n) {
  SpectralScenario sc;
  sc.n = n;
  sc.steps = 10;
  sc.seed = 1;
  sc.trajectory = TrajectorySpec::parse("linear:0.02");
  sc.decay = 0.7;
  sc.max_repair_fraction = 1.0;
  const auto net = generate_spectral_network(sc);
  double best = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    const auto start = Clock::now();
    const auto s = build_snapshots(net.graph, 10);
    const auto d = decompose(s.final());
    ForecastOptions options;
    options.fraction = 0.08;
    const Matrix scores = predict_scores(d, forecast_spectrum(s, d, ForecastMethod::linear(), options));
    best = std::min(best, seconds_since(start) + 0.0 * scores(0, 0));
  }
  return best;
}

Outcome criterion11() {
  const double small = predict_pipeline_seconds(200);
  const double large = predict_pipeline_seconds(400);
  const double ratio = large / small;
  return {ratio <= 12.0, fmt("n=200 %.3f s, n=400 %.3f s, ratio %.2f", small, large, ratio)};
}

}  // namespace

int main() {
  report(1, "decomposition contract", true, criterion1);
  report(2, "Rayleigh exactness and second-order error", true, criterion2);
  report(3, "kernel-oracle equivalence", true, criterion3);
  report(4, "exact-model recovery", true, criterion4);
  report(5, "fraction-8% reconstruction", true, criterion5);
  report(6, "approximate vs exact trajectories", true, criterion6);
  report(7, "trajectory methods ahead of kernels on irregular spectra", true, criterion7);
  report(8, "diagnostics sanity", true, criterion8);
  report(9, "evaluation determinism", true, criterion9);
  report(10, "AUC unit behavior", true, criterion10);
  report(11, "cost-model scaling", false, criterion11);
  std::printf("acceptance: %s (%d gating failure%s)\n", failures == 0 ? "PASS" : "FAIL", failures,
              failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}
