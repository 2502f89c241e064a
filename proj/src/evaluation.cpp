#include "spevo/evaluation.hpp"

#include "spevo/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <random>
#include <unordered_set>

namespace spevo {

namespace {

std::uint64_t pair_code(VertexId u, VertexId v) {
  const auto [a, b] = make_pair_key(u, v);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::vector<double> gather_scores(const Matrix& scores, const PairSet& pairs, const char* what) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    if (u == v || u < 1 || v > scores.rows()) {
      throw DomainError(std::string("auc_roc: invalid ") + what + " pair (" + std::to_string(u) +
                        ", " + std::to_string(v) + ")");
    }
    out.push_back(scores(u - 1, v - 1));
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

VertexPair make_pair_key(VertexId u, VertexId v) { return u < v ? VertexPair{u, v} : VertexPair{v, u}; }

LinkSplit temporal_split(const TemporalGraph& g, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("split ratio must lie in (0, 1)");
  const auto edges = g.edges_by_time();
  const auto train_count =
      static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(edges.size()) - 1e-9));
  if (train_count < 1 || train_count >= edges.size()) {
    throw DomainError("split ratio " + std::to_string(ratio) + " on " +
                      std::to_string(edges.size()) + " edges leaves one side empty");
  }
  LinkSplit split;
  split.ratio = ratio;
  split.train = TemporalGraph(g.vertex_count(),
                              std::vector<TemporalEdge>(edges.begin(), edges.begin() + train_count),
                              g.labels());
  for (std::size_t k = train_count; k < edges.size(); ++k) {
    split.test_positives.insert(make_pair_key(edges[k].source, edges[k].target));
  }
  return split;
}

PairSet sample_negatives(const TemporalGraph& g, const LinkSplit& split,
                         std::optional<std::size_t> count, std::uint64_t seed) {
  const std::size_t wanted = count.value_or(split.test_positives.size());
  PairSet out;
  if (wanted == 0) return out;

  std::unordered_set<std::uint64_t> taken;
  for (const auto& e : g.edges()) taken.insert(pair_code(e.source, e.target));
  for (const auto& e : split.train.edges()) taken.insert(pair_code(e.source, e.target));
  for (const auto& [u, v] : split.test_positives) taken.insert(pair_code(u, v));

  const std::size_t n = g.vertex_count();
  const std::size_t pairs = n * (n - 1) / 2;
  const std::size_t available = pairs - std::min(pairs, taken.size());
  if (wanted > available) {
    throw DomainError("cannot sample " + std::to_string(wanted) + " negatives: only " +
                      std::to_string(available) + " non-edges exist");
  }

  std::mt19937_64 rng(seed);
  if (2 * wanted > available) {
    std::vector<VertexPair> pool;
    pool.reserve(available);
    for (VertexId u = 1; u <= n; ++u) {
      for (VertexId v = u + 1; v <= n; ++v) {
        if (!taken.contains(pair_code(u, v))) pool.emplace_back(u, v);
      }
    }
    for (std::size_t k = 0; k < wanted; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
      std::swap(pool[k], pool[pick(rng)]);
      out.insert(pool[k]);
    }
    return out;
  }
  std::uniform_int_distribution<VertexId> vertex(1, static_cast<VertexId>(n));
  while (out.size() < wanted) {
    const VertexId u = vertex(rng);
    const VertexId v = vertex(rng);
    if (u == v || taken.contains(pair_code(u, v))) continue;
    out.insert(make_pair_key(u, v));
  }
  return out;
}

double auc_roc(const Matrix& scores, const PairSet& positives, const PairSet& negatives) {
  if (positives.empty() || negatives.empty()) throw DomainError("auc_roc: empty class");
  if (scores.rows() != scores.cols()) throw DomainError("auc_roc: score matrix is not square");
  for (const auto& p : positives) {
    if (negatives.contains(p)) throw DomainError("auc_roc: positive and negative sets overlap");
  }
  const auto pos = gather_scores(scores, positives, "positive");
  const auto neg = gather_scores(scores, negatives, "negative");

  std::vector<std::pair<double, bool>> all;
  all.reserve(pos.size() + neg.size());
  for (double s : pos) all.emplace_back(s, true);
  for (double s : neg) all.emplace_back(s, false);
  for (const auto& [s, _] : all) {
    if (std::isnan(s)) throw NumericalError("auc_roc: NaN score");
  }
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double positive_rank_sum = 0.0;
  for (std::size_t lo = 0; lo < all.size();) {
    std::size_t hi = lo;
    std::size_t hits = 0;
    while (hi < all.size() && all[hi].first == all[lo].first) hits += all[hi++].second ? 1 : 0;
    const double mid_rank = 0.5 * static_cast<double>(lo + 1 + hi);
    positive_rank_sum += mid_rank * static_cast<double>(hits);
    lo = hi;
  }
  const auto np = static_cast<double>(pos.size());
  const auto nn = static_cast<double>(neg.size());
  const double u = positive_rank_sum - np * (np + 1.0) / 2.0;
  return std::clamp(u / (np * nn), 0.0, 1.0);
}

bool scores_constant(const Matrix& scores) {
  const Eigen::Index n = scores.rows();
  bool seen = false;
  double first = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c) continue;
      if (!seen) {
        first = scores(r, c);
        seen = true;
      } else if (scores(r, c) != first) {
        return false;
      }
    }
  }
  return true;
}

Matrix threshold_predict(const Matrix& scores, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("delta must lie in [0, 1]");
  if (scores.rows() != scores.cols()) throw DomainError("threshold_predict: matrix is not square");
  const Eigen::Index n = scores.rows();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c) continue;
      lo = std::min(lo, scores(r, c));
      hi = std::max(hi, scores(r, c));
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    if (n > 1) throw NumericalError("threshold_predict: non-finite scores");
  }
  Matrix out = Matrix::Zero(n, n);
  const double range = hi - lo;
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c) continue;
      const double normalized = range > 0.0 ? (scores(r, c) - lo) / range : 0.0;
      if (normalized >= delta) out(r, c) = 1.0;
    }
  }
  return out;
}

void EvaluationReport::append(const EvaluationReport& other) {
  cells.insert(cells.end(), other.cells.begin(), other.cells.end());
}

bool EvaluationReport::any_failed() const {
  return std::any_of(cells.begin(), cells.end(), [](const auto& c) { return c.error.has_value(); });
}

EvaluationReport run_benchmark(const TemporalGraph& g, const BenchmarkConfig& config) {
  if (config.methods.empty()) throw DomainError("benchmark needs at least one method");
  if (config.ratios.empty()) throw DomainError("benchmark needs at least one ratio");

  EvaluationReport report;
  report.config = config;
  const bool needs_exact = std::any_of(config.methods.begin(), config.methods.end(), [](const auto& m) {
    return !m.is_kernel() && m.source == TrajectorySource::exact;
  });

  for (const double ratio : config.ratios) {
    const auto split = temporal_split(g, ratio);
    const auto negatives = sample_negatives(g, split, config.negatives, config.seed);
    const auto snapshots = build_snapshots(split.train, config.steps);

    auto start = std::chrono::steady_clock::now();
    const auto final = decompose(snapshots.final());
    const double shared_s = seconds_since(start);

    std::vector<SpectralDecomposition> decompositions;
    double exact_s = 0.0;
    if (needs_exact) {
      start = std::chrono::steady_clock::now();
      decompositions = decompose_all(snapshots.matrices);
      exact_s = seconds_since(start);
    }

    const auto count = static_cast<std::ptrdiff_t>(config.methods.size());
    std::vector<EvaluationCell> cells(config.methods.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
      const auto& method = config.methods[static_cast<std::size_t>(k)];
      auto& cell = cells[static_cast<std::size_t>(k)];
      cell.network = config.network;
      cell.ratio = ratio;
      cell.method = method.to_string();
      cell.train_edges = split.train.edge_count();
      cell.test_positives = split.test_positives.size();
      cell.negatives = negatives.size();
      const bool exact = !method.is_kernel() && method.source == TrajectorySource::exact;
      const auto cell_start = std::chrono::steady_clock::now();
      try {
        if (method.is_kernel() && method.transform.kind != SpectralTransform::Kind::triangle_closing) {
          cell.alpha = method.transform.resolved_alpha(final);
        }
        ForecastOptions options;
        options.fraction = config.fraction;
        if (exact) options.snapshot_decompositions = decompositions;
        const auto forecast = forecast_spectrum(snapshots, final, method, options);
        const Matrix scores = predict_scores(final, forecast, config.policy);
        cell.auc = auc_roc(scores, split.test_positives, negatives);
      } catch (const std::exception& e) {
        cell.auc.reset();
        cell.error = e.what();
      }
      cell.runtime_s = seconds_since(cell_start) + shared_s + (exact ? exact_s : 0.0);
    }
    for (auto& cell : cells) report.cells.push_back(std::move(cell));
  }
  return report;
}

void write_report_json(std::ostream& out, const EvaluationReport& report, bool include_runtime) {
  using nlohmann::json;
  json doc = json::array();
  for (const auto& cell : report.cells) {
    json params = {{"steps", report.config.steps},
                   {"fraction", report.config.fraction},
                   {"unselected", to_string(report.config.policy)},
                   {"seed", report.config.seed},
                   {"train_edges", cell.train_edges},
                   {"test_positives", cell.test_positives},
                   {"negatives", cell.negatives}};
    if (cell.alpha) params["alpha"] = *cell.alpha;
    if (cell.error) params["error"] = *cell.error;
    json row = {{"network", cell.network},
                {"ratio", cell.ratio},
                {"method", cell.method},
                {"auc", cell.auc ? json(*cell.auc) : json(nullptr)}};
    if (include_runtime) row["runtime_s"] = cell.runtime_s;
    row["params"] = std::move(params);
    doc.push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

void write_report_csv(std::ostream& out, const EvaluationReport& report) {
  auto quoted = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  out << "network,ratio,method,auc,runtime_s,steps,fraction,unselected,seed,train_edges,"
         "test_positives,negatives,alpha,error\n";
  for (const auto& cell : report.cells) {
    out << quoted(cell.network) << ',' << cell.ratio << ',' << quoted(cell.method) << ',';
    if (cell.auc) out << *cell.auc;
    out << ',' << cell.runtime_s << ',' << report.config.steps << ',' << report.config.fraction
        << ',' << to_string(report.config.policy) << ',' << report.config.seed << ','
        << cell.train_edges << ',' << cell.test_positives << ',' << cell.negatives << ',';
    if (cell.alpha) out << *cell.alpha;
    out << ',';
    if (cell.error) out << quoted(*cell.error);
    out << '\n';
  }
}

}  // namespace spevo
