#pragma once

#include "spevo/spectral.hpp"
#include "spevo/temporal_graph.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace spevo {

/// Shape of every eigenvalue trajectory. Each dimension j scales its base
/// eigenvalue by a growth factor w_j(i), i = 1..t+1, with w_j(1) = 1:
///  - constant:  w = 1
///  - linear:    w = 1 + parameter * u_j * (i - 1)
///  - quadratic: w = 1 + parameter * u_j * (i - 1)^2
///  - irregular: w(i) = max(w(i-1) + parameter * r_j * (1 + noise), 0.05)
/// with u_j ~ U[0.5, 1.5], r_j ~ U[0, 2] and noise ~ U[-0.9, 0.9] per step.
struct TrajectorySpec {
  enum class Family { constant, linear, quadratic, irregular };

  Family family = Family::linear;
  double parameter = 0.1;

  /// `constant`, `linear:<slope>`, `quadratic:<curvature>`, `irregular:<rate>`.
  static TrajectorySpec parse(std::string_view spec);
  std::string to_string() const;
};

struct SpectralScenario {
  std::size_t n = 100;
  std::size_t steps = 10;  // t observed steps; step t + 1 is held out
  std::uint64_t seed = 1;
  TrajectorySpec trajectory;
  double density = 0.05;  // edge density of the held-out step before union repair
  double decay = 0.9;     // |base eigenvalue j| = decay^j
  // Steps >= rotate_at (1-based) use an independent second basis.
  std::optional<std::size_t> rotate_at;
  double max_repair_fraction = 0.1;

  void validate() const;
};

struct GroundTruth {
  Matrix basis;
  Matrix rotated_basis;  // empty unless the scenario rotates
  std::optional<std::size_t> rotate_at;
  Matrix eigenvalues;  // n x (t + 1); column i - 1 is Lambda(i)
  double threshold = 0.0;
  Matrix held_out;  // 0/1 adjacency at step t + 1
  std::vector<std::size_t> step_edge_counts;  // edges at steps 1..t+1
  std::size_t repaired_edges = 0;

  std::size_t steps() const { return static_cast<std::size_t>(eigenvalues.cols()) - 1; }
  /// X Lambda(step) X^T for step in 1..t+1.
  Matrix spectral_matrix(std::size_t step) const;
};

struct SyntheticNetwork {
  TemporalGraph graph;  // steps 1..t, timestamp = first step of appearance
  GroundTruth truth;
};

/// Fixed random orthogonal basis with prescribed eigenvalue trajectories,
/// thresholded at a single value chosen so step t + 1 hits the density target,
/// made cumulative by running unions. Throws DomainError when the union adds
/// back more than max_repair_fraction of the final edges.
SyntheticNetwork generate_spectral_network(const SpectralScenario& scenario);

/// Dense variant: the exact matrices X Lambda(i) X^T for i = 1..t.
SnapshotSequence spectral_sequence(const GroundTruth& truth);

/// Seeded Haar-like orthogonal matrix (QR of a Gaussian matrix).
Matrix random_orthogonal(Eigen::Index n, std::uint64_t seed);

/// Sidecar JSON: scenario, threshold, per-step edge counts and trajectories;
/// the basis only when requested.
void write_ground_truth_json(std::ostream& out, const SpectralScenario& scenario,
                             const GroundTruth& truth, bool include_basis);

}  // namespace spevo
