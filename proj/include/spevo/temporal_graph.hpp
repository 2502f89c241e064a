#pragma once

#include "spevo/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace spevo {

using VertexId = std::uint32_t;  // 1-based

/// Undirected edge stored canonically (source < target).
struct TemporalEdge {
  VertexId source = 0;
  VertexId target = 0;
  double timestamp = 0.0;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Order used everywhere edges are split in time: timestamp, then the
/// canonical pair.
bool time_order(const TemporalEdge& a, const TemporalEdge& b);

/// Simple undirected graph on {1..vertex_count} with timestamped edges.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  // Validates and canonicalizes. Throws DomainError on self-loops,
  // out-of-range endpoints or duplicate pairs.
  TemporalGraph(std::size_t vertex_count, std::vector<TemporalEdge> edges,
                std::vector<std::string> labels = {});

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<TemporalEdge>& edges() const { return edges_; }

  // labels()[v - 1] is the input label of vertex v. Empty when the graph was
  // built without labels, in which case label(v) is the decimal index.
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(VertexId v) const;

  // Edges sorted by time_order.
  std::vector<TemporalEdge> edges_by_time() const;

  /// Dense symmetric 0/1 adjacency matrix (0-based rows).
  Matrix adjacency() const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<TemporalEdge> edges_;
  std::vector<std::string> labels_;
};

struct ParseOptions {
  // 0 means "whitespace or comma".
  char delimiter = 0;
};

struct ParseResult {
  TemporalGraph graph;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
};

/// Reads `source target timestamp` lines. Labels map to 1-based indices in
/// order of first appearance; duplicates keep the earliest timestamp;
/// self-loops are dropped and counted; `#` lines and blank lines are skipped.
ParseResult parse_edge_list(std::istream& in, const ParseOptions& options = {});
ParseResult read_edge_list(const std::string& path, const ParseOptions& options = {});

/// Writes the graph in the edge-list format, one edge per line in time_order,
/// using vertex labels.
void write_edge_list(std::ostream& out, const TemporalGraph& g);

/// Induced subgraph on the largest connected component. Vertices keep their
/// relative order; equal-size components are resolved by the smallest vertex.
TemporalGraph largest_connected_component(const TemporalGraph& g);

/// t cumulative adjacency matrices A_1 ... A_t.
struct SnapshotSequence {
  std::vector<Matrix> matrices;
  // Number of edges in each snapshot; empty for sequences built from dense
  // non-graph matrices.
  std::vector<std::size_t> edge_counts;

  std::size_t step_count() const { return matrices.size(); }
  Eigen::Index dimension() const { return matrices.empty() ? 0 : matrices.front().rows(); }
  const Matrix& final() const { return matrices.back(); }
};

/// Sorts edges by time_order and splits them into t consecutive chunks of
/// floor(|E|/t) edges, the first |E| mod t chunks one edge larger. Snapshot i
/// holds chunks 1..i. Throws DomainError unless 1 <= t <= |E|.
SnapshotSequence build_snapshots(const TemporalGraph& g, std::size_t t);

/// Snapshot k holds every edge with timestamp <= cuts[k]. Cuts must be
/// strictly increasing.
SnapshotSequence build_snapshots_at(const TemporalGraph& g, std::span<const double> cuts);

/// Wraps arbitrary symmetric matrices (same dimension) as a sequence.
SnapshotSequence make_sequence(std::vector<Matrix> matrices);

}  // namespace spevo
