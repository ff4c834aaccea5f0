#pragma once

#include "arbsample/graph.hpp"

#include <concepts>
#include <cstdint>
#include <optional>
#include <random>

namespace arbsample {

/// Per-kind query tally.
struct QueryCounts {
  std::uint64_t degree = 0;
  std::uint64_t neighbor = 0;
  std::uint64_t pair = 0;
  std::uint64_t uniform = 0;

  std::uint64_t total() const { return degree + neighbor + pair + uniform; }

  QueryCounts &operator+=(const QueryCounts &o) {
    degree += o.degree;
    neighbor += o.neighbor;
    pair += o.pair;
    uniform += o.uniform;
    return *this;
  }

  friend QueryCounts operator-(QueryCounts a, const QueryCounts &b) {
    a.degree -= b.degree;
    a.neighbor -= b.neighbor;
    a.pair -= b.pair;
    a.uniform -= b.uniform;
    return a;
  }

  friend bool operator==(const QueryCounts &, const QueryCounts &) = default;
};

/**
   What a sampler may see of a graph: n, the four counted queries, and a
   private random stream for its own coin flips (which is not a query).
 */
template <typename O>
concept QueryOracle = requires(O o, const O co, Vertex v, std::size_t i, std::uint64_t bound) {
  { co.num_vertices() } -> std::convertible_to<std::size_t>;
  { o.degree(v) } -> std::convertible_to<std::size_t>;
  { o.neighbor(v, i) } -> std::same_as<std::optional<Vertex>>;
  { o.pair(v, v) } -> std::convertible_to<bool>;
  { o.uniform_vertex() } -> std::convertible_to<Vertex>;
  { o.draw_below(bound) } -> std::convertible_to<std::uint64_t>;
  { co.counts() } -> std::convertible_to<QueryCounts>;
};

/**
   Query-counted access to a Graph.

   The session never mutates the graph; counters and the random stream are its
   only state. One session per thread.
 */
class OracleSession {
public:
  OracleSession(const Graph &g, std::uint64_t seed) : graph_(&g), rng_(seed) {}

  std::size_t num_vertices() const { return graph_->num_vertices(); }

  std::size_t degree(Vertex v);

  /// 1-based index; returns nullopt when i > d(v).
  std::optional<Vertex> neighbor(Vertex v, std::size_t i);

  bool pair(Vertex u, Vertex v);

  Vertex uniform_vertex();

  /// Uniform integer in [0, bound). Internal randomness, not counted.
  std::uint64_t draw_below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng_);
  }

  const QueryCounts &counts() const { return counts_; }

private:
  void check_vertex(Vertex v) const;

  const Graph *graph_;
  std::mt19937_64 rng_;
  QueryCounts counts_;
};

static_assert(QueryOracle<OracleSession>);

} // namespace arbsample
