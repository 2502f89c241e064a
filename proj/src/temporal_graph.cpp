#include "spevo/temporal_graph.hpp"

#include "spevo/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string_view>
#include <unordered_map>

namespace spevo {

bool time_order(const TemporalEdge& a, const TemporalEdge& b) {
  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
  if (a.source != b.source) return a.source < b.source;
  return a.target < b.target;
}

namespace {

std::uint64_t pair_key(VertexId u, VertexId v) {
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

std::string format_timestamp(double t) {
  char buf[32];
  std::to_chars_result res;
  if (std::floor(t) == t && std::abs(t) < 9e15) {
    res = std::to_chars(buf, buf + sizeof buf, static_cast<long long>(t));
  } else {
    res = std::to_chars(buf, buf + sizeof buf, t);
  }
  return std::string(buf, res.ptr);
}

}  // namespace

TemporalGraph::TemporalGraph(std::size_t vertex_count, std::vector<TemporalEdge> edges,
                             std::vector<std::string> labels)
    : vertex_count_(vertex_count), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != vertex_count_) {
    throw DomainError("label count " + std::to_string(labels_.size()) +
                      " does not match vertex count " + std::to_string(vertex_count_));
  }
  std::unordered_map<std::uint64_t, std::size_t> seen;
  seen.reserve(edges_.size());
  for (auto& e : edges_) {
    if (e.source == e.target) {
      throw DomainError("self-loop on vertex " + std::to_string(e.source));
    }
    if (e.source > e.target) std::swap(e.source, e.target);
    if (e.source < 1 || e.target > vertex_count_) {
      throw DomainError("edge (" + std::to_string(e.source) + ", " + std::to_string(e.target) +
                        ") outside vertex range 1.." + std::to_string(vertex_count_));
    }
    if (!std::isfinite(e.timestamp)) throw DomainError("non-finite timestamp");
    if (!seen.emplace(pair_key(e.source, e.target), 0).second) {
      throw DomainError("duplicate edge (" + std::to_string(e.source) + ", " +
                        std::to_string(e.target) + ")");
    }
  }
}

std::string TemporalGraph::label(VertexId v) const {
  if (labels_.empty()) return std::to_string(v);
  return labels_.at(v - 1);
}

std::vector<TemporalEdge> TemporalGraph::edges_by_time() const {
  auto sorted = edges_;
  std::sort(sorted.begin(), sorted.end(), time_order);
  return sorted;
}

Matrix TemporalGraph::adjacency() const {
  const auto n = static_cast<Eigen::Index>(vertex_count_);
  Matrix a = Matrix::Zero(n, n);
  for (const auto& e : edges_) {
    a(e.source - 1, e.target - 1) = 1.0;
    a(e.target - 1, e.source - 1) = 1.0;
  }
  return a;
}

ParseResult parse_edge_list(std::istream& in, const ParseOptions& options) {
  std::unordered_map<std::string, VertexId> ids;
  std::vector<std::string> labels;
  std::vector<TemporalEdge> edges;
  std::unordered_map<std::uint64_t, std::size_t> position;
  ParseResult result;

  auto intern = [&](std::string_view label) {
    auto [it, inserted] = ids.emplace(std::string(label), static_cast<VertexId>(labels.size() + 1));
    if (inserted) labels.emplace_back(label);
    return it->second;
  };
  auto is_separator = [&](char c) {
    if (options.delimiter != 0) return c == options.delimiter;
    return c == ' ' || c == '\t' || c == ',' || c == '\r';
  };

  std::string line;
  std::size_t line_no = 0;
  std::size_t data_lines = 0;
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    while (!view.empty() && (view.back() == '\r' || view.back() == ' ' || view.back() == '\t')) {
      view.remove_suffix(1);
    }
    const auto first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos || view[first] == '#') continue;
    view.remove_prefix(first);

    fields.clear();
    if (options.delimiter == 0) {
      std::size_t i = 0;
      while (i < view.size()) {
        while (i < view.size() && is_separator(view[i])) ++i;
        if (i == view.size()) break;
        std::size_t j = i;
        while (j < view.size() && !is_separator(view[j])) ++j;
        fields.push_back(view.substr(i, j - i));
        i = j;
      }
    } else {
      std::size_t i = 0;
      while (true) {
        const auto j = view.find(options.delimiter, i);
        auto field = view.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i);
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
        fields.push_back(field);
        if (j == std::string_view::npos) break;
        i = j + 1;
      }
    }
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 fields (source target timestamp), found " +
                                    std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) throw ParseError(line_no, "empty vertex label");

    double timestamp = 0.0;
    const auto ts = fields[2];
    const auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), timestamp);
    if (ec != std::errc{} || ptr != ts.data() + ts.size() || !std::isfinite(timestamp)) {
      throw ParseError(line_no, "cannot parse timestamp '" + std::string(ts) + "'");
    }
    ++data_lines;

    VertexId u = intern(fields[0]);
    VertexId v = intern(fields[1]);
    if (u == v) {
      ++result.self_loops_dropped;
      continue;
    }
    if (u > v) std::swap(u, v);
    const auto [it, inserted] = position.emplace(pair_key(u, v), edges.size());
    if (inserted) {
      edges.push_back({u, v, timestamp});
    } else {
      ++result.duplicates_merged;
      auto& kept = edges[it->second];
      kept.timestamp = std::min(kept.timestamp, timestamp);
    }
  }
  if (in.bad()) throw IoError("read failure after line " + std::to_string(line_no));
  if (data_lines == 0) throw ParseError(line_no, "edge list is empty");

  const auto n = labels.size();
  result.graph = TemporalGraph(n, std::move(edges), std::move(labels));
  return result;
}

ParseResult read_edge_list(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const TemporalGraph& g) {
  for (const auto& e : g.edges_by_time()) {
    out << g.label(e.source) << ' ' << g.label(e.target) << ' ' << format_timestamp(e.timestamp)
        << '\n';
  }
}

TemporalGraph largest_connected_component(const TemporalGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw DomainError("largest_connected_component: empty graph");

  std::vector<std::vector<VertexId>> adjacency(n + 1);
  for (const auto& e : g.edges()) {
    adjacency[e.source].push_back(e.target);
    adjacency[e.target].push_back(e.source);
  }

  // Components are discovered from their smallest vertex, so keeping the
  // first strictly larger one resolves ties toward the smallest vertex.
  std::vector<std::uint32_t> component(n + 1, 0);
  std::uint32_t best = 0;
  std::size_t best_size = 0;
  std::uint32_t next_id = 0;
  std::vector<VertexId> stack;
  for (VertexId start = 1; start <= n; ++start) {
    if (component[start] != 0) continue;
    const std::uint32_t id = ++next_id;
    std::size_t size = 0;
    component[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      ++size;
      for (VertexId w : adjacency[u]) {
        if (component[w] == 0) {
          component[w] = id;
          stack.push_back(w);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best = id;
    }
  }

  std::vector<VertexId> remap(n + 1, 0);
  std::vector<std::string> labels;
  VertexId next = 0;
  for (VertexId v = 1; v <= n; ++v) {
    if (component[v] != best) continue;
    remap[v] = ++next;
    labels.push_back(g.label(v));
  }
  std::vector<TemporalEdge> edges;
  for (const auto& e : g.edges()) {
    if (component[e.source] == best) {
      edges.push_back({remap[e.source], remap[e.target], e.timestamp});
    }
  }
  return TemporalGraph(best_size, std::move(edges), std::move(labels));
}

SnapshotSequence build_snapshots(const TemporalGraph& g, std::size_t t) {
  const std::size_t m = g.edge_count();
  if (t == 0) throw DomainError("build_snapshots: step count must be positive");
  if (t > m) {
    throw DomainError("build_snapshots: " + std::to_string(t) + " steps requested but graph has " +
                      std::to_string(m) + " edges");
  }
  const auto sorted = g.edges_by_time();
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  const std::size_t base = m / t;
  const std::size_t extra = m % t;

  SnapshotSequence s;
  s.matrices.reserve(t);
  Matrix current = Matrix::Zero(n, n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t chunk = base + (i < extra ? 1 : 0);
    for (std::size_t k = 0; k < chunk; ++k, ++next) {
      const auto& e = sorted[next];
      current(e.source - 1, e.target - 1) = 1.0;
      current(e.target - 1, e.source - 1) = 1.0;
    }
    s.matrices.push_back(current);
    s.edge_counts.push_back(next);
  }
  return s;
}

SnapshotSequence build_snapshots_at(const TemporalGraph& g, std::span<const double> cuts) {
  if (cuts.empty()) throw DomainError("build_snapshots_at: no cut points");
  if (!std::is_sorted(cuts.begin(), cuts.end(), std::less_equal<>{})) {
    throw DomainError("build_snapshots_at: cut points must be strictly increasing");
  }
  const auto sorted = g.edges_by_time();
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  SnapshotSequence s;
  Matrix current = Matrix::Zero(n, n);
  std::size_t next = 0;
  for (const double cut : cuts) {
    for (; next < sorted.size() && sorted[next].timestamp <= cut; ++next) {
      const auto& e = sorted[next];
      current(e.source - 1, e.target - 1) = 1.0;
      current(e.target - 1, e.source - 1) = 1.0;
    }
    s.matrices.push_back(current);
    s.edge_counts.push_back(next);
  }
  return s;
}

SnapshotSequence make_sequence(std::vector<Matrix> matrices) {
  if (matrices.empty()) throw DomainError("make_sequence: no matrices");
  for (const auto& m : matrices) {
    require_symmetric(m);
    if (m.rows() != matrices.front().rows()) {
      throw DomainError("make_sequence: matrices differ in dimension");
    }
  }
  SnapshotSequence s;
  s.matrices = std::move(matrices);
  return s;
}

}  // namespace spevo
