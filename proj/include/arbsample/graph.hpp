#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arbsample {

using Vertex = std::uint32_t;

/// Unordered edge as stored; `u` and `v` keep the orientation of first appearance.
struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge &, const Edge &) = default;
};

/// An edge together with a direction; the sampler's native output unit.
struct OrderedEdge {
  Vertex from;
  Vertex to;

  friend auto operator<=>(const OrderedEdge &, const OrderedEdge &) = default;
};

/**
   Immutable simple undirected graph on vertices [0, n).

   Neighbor lists are stored in compressed form in the order edges were
   supplied, so nbr(v, i) is stable for the lifetime of the object.
 */
class Graph {
public:
  Graph() = default;

  /// Throws InputError on self-loops, parallel edges or ids >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], degree(v)};
  }

  /// O(log d) membership test.
  bool has_edge(Vertex u, Vertex v) const;

  std::span<const Edge> edges() const { return edges_; }

  /// Both orientations of every edge, grouped by source vertex in neighbor order.
  std::vector<OrderedEdge> ordered_edges() const;

  std::size_t max_degree() const;
  double average_degree() const;

private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<Vertex> sorted_targets_;
  std::vector<Edge> edges_;
};

/// Parses the whitespace "u v" edge-list format. Lines starting with '#' and
/// blank lines are skipped; an optional "n=<int>" line declares the vertex
/// count. `n_override` takes precedence over both the header and inference.
Graph parse_edge_list(std::string_view text, std::optional<std::size_t> n_override = {});

Graph load_edge_list(const std::string &path, std::optional<std::size_t> n_override = {});

/// Writes "n=<n>" followed by one line per edge in stored order. Reparsing the
/// output reproduces identical neighbor ordering.
std::string format_edge_list(const Graph &g);

} // namespace arbsample
