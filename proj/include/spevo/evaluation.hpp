#pragma once

#include "spevo/spectral.hpp"
#include "spevo/temporal_graph.hpp"
#include "spevo/trajectory.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace spevo {

/// Unordered vertex pair stored as (smaller, larger), 1-based.
using VertexPair = std::pair<VertexId, VertexId>;
using PairSet = std::set<VertexPair>;

VertexPair make_pair_key(VertexId u, VertexId v);

struct LinkSplit {
  TemporalGraph train;  // same vertex set as the source graph
  PairSet test_positives;
  double ratio = 0.75;
};

/// The first ceil(ratio |E|) edges in time order train, the rest are test
/// positives. Throws DomainError when either side would be empty.
LinkSplit temporal_split(const TemporalGraph& g, double ratio);

/// `count` distinct uniformly random pairs that are neither edges of `g` nor
/// self-pairs; `count` defaults to the number of test positives.
/// Deterministic per seed. Throws DomainError when too few non-edges exist.
PairSet sample_negatives(const TemporalGraph& g, const LinkSplit& split,
                         std::optional<std::size_t> count, std::uint64_t seed);

/// P(score(p) > score(n)) + 1/2 P(score(p) = score(n)) by exact rank sums.
double auc_roc(const Matrix& scores, const PairSet& positives, const PairSet& negatives);

/// Min-max normalizes the off-diagonal scores to [0, 1] and keeps pairs with
/// normalized score >= delta; diagonal is 0. A constant matrix normalizes to
/// 0, so it yields all ones for delta = 0 and all zeros otherwise.
Matrix threshold_predict(const Matrix& scores, double delta);

/// True when every off-diagonal score is equal (normalization degenerate).
bool scores_constant(const Matrix& scores);

struct BenchmarkConfig {
  std::string network = "network";
  std::vector<ForecastMethod> methods;
  std::vector<double> ratios{0.75};
  std::uint64_t seed = 1;
  std::size_t steps = 10;
  double fraction = 0.08;  // applied to every method, kernels included
  UnselectedPolicy policy = UnselectedPolicy::zero;
  std::optional<std::size_t> negatives;  // default |test positives|
};

struct EvaluationCell {
  std::string network;
  double ratio = 0.0;
  std::string method;
  std::optional<double> auc;     // empty when the method failed
  std::optional<std::string> error;
  double runtime_s = 0.0;
  std::size_t train_edges = 0;
  std::size_t test_positives = 0;
  std::size_t negatives = 0;
  std::optional<double> alpha;  // resolved kernel parameter
};

struct EvaluationReport {
  BenchmarkConfig config;
  std::vector<EvaluationCell> cells;  // ratio-major, then method order

  /// Appends the cells of another run (another network, same protocol).
  void append(const EvaluationReport& other);
  bool any_failed() const;
};

/// For every ratio: split, snapshot the train edges, forecast with every
/// method, score test positives against sampled negatives. Cells of one
/// ratio run in parallel; a failing method is recorded, not thrown.
EvaluationReport run_benchmark(const TemporalGraph& g, const BenchmarkConfig& config);

/// JSON array of {network, ratio, method, auc, runtime_s, params}. Without
/// runtimes the output is byte-identical for identical config and seed.
void write_report_json(std::ostream& out, const EvaluationReport& report,
                       bool include_runtime = true);
void write_report_csv(std::ostream& out, const EvaluationReport& report);

}  // namespace spevo
