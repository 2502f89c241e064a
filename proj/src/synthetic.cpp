#include "spevo/synthetic.hpp"

#include "spevo/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <random>
#include <set>

namespace spevo {

namespace {

using Rng = std::mt19937_64;

Matrix random_orthogonal(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) g(r, c) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the signs of diag(R) makes the factorization unique.
  for (Eigen::Index c = 0; c < n; ++c) {
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  return q;
}

double parse_parameter(std::string_view text, std::string_view spec) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw DomainError("bad parameter in trajectory spec '" + std::string(spec) + "'");
  }
  return value;
}

}  // namespace

TrajectorySpec TrajectorySpec::parse(std::string_view spec) {
  if (spec == "constant") return {Family::constant, 0.0};
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("trajectory spec '" + std::string(spec) +
                      "' needs a parameter (linear:<slope>, quadratic:<c>, irregular:<rate>)");
  }
  const auto head = spec.substr(0, colon);
  const double value = parse_parameter(spec.substr(colon + 1), spec);
  if (head == "linear") return {Family::linear, value};
  if (head == "quadratic") return {Family::quadratic, value};
  if (head == "irregular") return {Family::irregular, value};
  throw DomainError("unknown trajectory family '" + std::string(head) + "'");
}

std::string TrajectorySpec::to_string() const {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, parameter);
  const std::string value(buf, res.ptr);
  switch (family) {
    case Family::constant:
      return "constant";
    case Family::linear:
      return "linear:" + value;
    case Family::quadratic:
      return "quadratic:" + value;
    case Family::irregular:
      return "irregular:" + value;
  }
  return {};
}

void SpectralScenario::validate() const {
  if (n < 4) throw DomainError("scenario needs n >= 4");
  if (steps < 3) throw DomainError("scenario needs at least 3 steps");
  if (!(density > 0.0 && density < 1.0)) throw DomainError("density must lie in (0, 1)");
  if (!(decay > 0.0 && decay <= 1.0)) throw DomainError("decay must lie in (0, 1]");
  if (rotate_at && (*rotate_at < 2 || *rotate_at > steps + 1)) {
    throw DomainError("rotate_at must lie in 2.." + std::to_string(steps + 1));
  }
  if (!(max_repair_fraction >= 0.0)) throw DomainError("max_repair_fraction must be >= 0");
}

Matrix GroundTruth::spectral_matrix(std::size_t step) const {
  if (step < 1 || step > steps() + 1) {
    throw DomainError("step " + std::to_string(step) + " outside 1.." + std::to_string(steps() + 1));
  }
  const bool rotated = rotate_at && step >= *rotate_at;
  return reconstruct(rotated ? rotated_basis : basis,
                     eigenvalues.col(static_cast<Eigen::Index>(step - 1)));
}

Matrix random_orthogonal(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  return random_orthogonal(n, rng);
}

SyntheticNetwork generate_spectral_network(const SpectralScenario& sc) {
  sc.validate();
  const auto n = static_cast<Eigen::Index>(sc.n);
  const auto total = static_cast<Eigen::Index>(sc.steps + 1);
  Rng rng(sc.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  GroundTruth truth;
  truth.basis = random_orthogonal(n, rng);

  Vector base(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double sign = (j == 0 || unit(rng) < 0.7) ? 1.0 : -1.0;
    base(j) = sign * std::pow(sc.decay, static_cast<double>(j));
  }
  Vector spread(n);
  for (Eigen::Index j = 0; j < n; ++j) spread(j) = 0.5 + unit(rng);

  Matrix growth = Matrix::Ones(n, total);
  const double p = sc.trajectory.parameter;
  switch (sc.trajectory.family) {
    case TrajectorySpec::Family::constant:
      break;
    case TrajectorySpec::Family::linear:
      for (Eigen::Index i = 0; i < total; ++i) growth.col(i).array() = 1.0 + p * spread.array() * i;
      break;
    case TrajectorySpec::Family::quadratic:
      for (Eigen::Index i = 0; i < total; ++i) {
        growth.col(i).array() = 1.0 + p * spread.array() * static_cast<double>(i * i);
      }
      break;
    case TrajectorySpec::Family::irregular: {
      Vector rate(n);
      for (Eigen::Index j = 0; j < n; ++j) rate(j) = 2.0 * unit(rng);
      for (Eigen::Index i = 1; i < total; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          const double noise = -0.9 + 1.8 * unit(rng);
          growth(j, i) = std::max(growth(j, i - 1) + p * rate(j) * (1.0 + noise), 0.05);
        }
      }
      break;
    }
  }
  truth.eigenvalues = growth.array().colwise() * base.array();
  if (sc.rotate_at) {
    truth.rotate_at = sc.rotate_at;
    truth.rotated_basis = random_orthogonal(n, rng);
  }

  // Single threshold: the K-th largest off-diagonal entry of M_{t+1}.
  const Matrix last = truth.spectral_matrix(sc.steps + 1);
  std::vector<double> upper;
  upper.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index c = 1; c < n; ++c) {
    for (Eigen::Index r = 0; r < c; ++r) upper.push_back(last(r, c));
  }
  const auto wanted = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(sc.density * static_cast<double>(upper.size()))));
  std::nth_element(upper.begin(), upper.begin() + static_cast<std::ptrdiff_t>(wanted - 1),
                   upper.end(), std::greater<>{});
  truth.threshold = upper[wanted - 1];
  if (!(truth.threshold > 0.0)) {
    throw DomainError("density target " + std::to_string(sc.density) +
                      " is not achievable: threshold would be non-positive");
  }

  std::vector<TemporalEdge> edges;
  std::set<std::pair<Eigen::Index, Eigen::Index>> repaired;
  Matrix current = Matrix::Zero(n, n);
  for (std::size_t step = 1; step <= sc.steps + 1; ++step) {
    const Matrix m = truth.spectral_matrix(step);
    std::size_t count = 0;
    for (Eigen::Index c = 1; c < n; ++c) {
      for (Eigen::Index r = 0; r < c; ++r) {
        const bool above = m(r, c) >= truth.threshold;
        if (current(r, c) != 0.0) {
          if (!above) repaired.emplace(r, c);
        } else if (above) {
          current(r, c) = current(c, r) = 1.0;
          if (step <= sc.steps) {
            edges.push_back({static_cast<VertexId>(r + 1), static_cast<VertexId>(c + 1),
                             static_cast<double>(step)});
          }
        }
        if (current(r, c) != 0.0) ++count;
      }
    }
    truth.step_edge_counts.push_back(count);
  }
  truth.held_out = std::move(current);
  truth.repaired_edges = repaired.size();

  const double final_edges = static_cast<double>(truth.step_edge_counts.back());
  if (static_cast<double>(truth.repaired_edges) > sc.max_repair_fraction * final_edges) {
    throw DomainError("scenario too irregular to be cumulative: union repair kept " +
                      std::to_string(truth.repaired_edges) + " of " +
                      std::to_string(truth.step_edge_counts.back()) + " edges (limit " +
                      std::to_string(sc.max_repair_fraction) + ")");
  }

  return {TemporalGraph(sc.n, std::move(edges)), std::move(truth)};
}

SnapshotSequence spectral_sequence(const GroundTruth& truth) {
  std::vector<Matrix> matrices;
  for (std::size_t step = 1; step <= truth.steps(); ++step) {
    matrices.push_back(truth.spectral_matrix(step));
  }
  return make_sequence(std::move(matrices));
}

void write_ground_truth_json(std::ostream& out, const SpectralScenario& sc,
                             const GroundTruth& truth, bool include_basis) {
  using nlohmann::json;
  json doc;
  doc["scenario"] = {{"n", sc.n},
                     {"steps", sc.steps},
                     {"seed", sc.seed},
                     {"trajectory", sc.trajectory.to_string()},
                     {"density", sc.density},
                     {"decay", sc.decay},
                     {"max_repair_fraction", sc.max_repair_fraction}};
  doc["scenario"]["rotate_at"] = sc.rotate_at ? json(*sc.rotate_at) : json(nullptr);
  doc["threshold"] = truth.threshold;
  doc["step_edge_counts"] = truth.step_edge_counts;
  doc["repaired_edges"] = truth.repaired_edges;

  json trajectories = json::array();
  for (Eigen::Index j = 0; j < truth.eigenvalues.rows(); ++j) {
    std::vector<double> values(truth.eigenvalues.cols());
    for (Eigen::Index i = 0; i < truth.eigenvalues.cols(); ++i) values[static_cast<std::size_t>(i)] = truth.eigenvalues(j, i);
    trajectories.push_back({{"dimension", j + 1}, {"values", values}});
  }
  doc["trajectories"] = std::move(trajectories);

  if (include_basis) {
    auto rows = [](const Matrix& m) {
      json out = json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<double> row(m.cols());
        for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
        out.push_back(row);
      }
      return out;
    };
    doc["basis"] = rows(truth.basis);
    if (truth.rotate_at) doc["rotated_basis"] = rows(truth.rotated_basis);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace spevo
