#pragma once

// Test-only reference computations. None of these share code with the
// library's analyzer or layering; they enumerate choices or subsets directly.

#include "arbsample/graph.hpp"
#include "arbsample/oracle.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace arbsample::oracle {

inline mpq_class frac(unsigned long num, unsigned long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

/// Exact per-attempt law of the edge sampler by enumerating every random
/// choice: walk length, start vertex, acceptance coin, every neighbor step,
/// and the final neighbor. Exponential in ell; tiny graphs only.
inline std::map<OrderedEdge, mpq_class> enumerate_attempt_law(const Graph &g, std::uint64_t theta,
                                                              std::uint32_t ell) {
  std::map<OrderedEdge, mpq_class> law;
  const auto n = g.num_vertices();

  std::function<void(Vertex, std::uint32_t, mpq_class)> walk = [&](Vertex v, std::uint32_t left,
                                                                   mpq_class p) {
    const auto d = g.degree(v);
    if (left == 0) {
      for (Vertex w : g.neighbors(v))
        law[{v, w}] += p / d;
      return;
    }
    for (Vertex w : g.neighbors(v)) {
      if (g.degree(w) <= theta)
        continue;
      walk(w, left - 1, p / d);
    }
  };

  for (std::uint32_t j = 0; j <= ell; ++j) {
    for (Vertex u = 0; u < n; ++u) {
      const auto d = g.degree(u);
      if (d == 0 || d > theta)
        continue;
      mpq_class p(1);
      p /= (ell + 1);
      p /= n;
      p *= frac(d, theta);
      walk(u, j, p);
    }
  }
  return law;
}

/// Exact probability that a walk of length j returns v, by path enumeration.
inline std::vector<mpq_class> enumerate_walk_endpoints(const Graph &g, std::uint64_t theta,
                                                       std::uint32_t j) {
  std::vector<mpq_class> out(g.num_vertices(), 0);
  std::function<void(Vertex, std::uint32_t, mpq_class)> walk = [&](Vertex v, std::uint32_t left,
                                                                   mpq_class p) {
    if (left == 0) {
      out[v] += p;
      return;
    }
    for (Vertex w : g.neighbors(v))
      if (g.degree(w) > theta)
        walk(w, left - 1, p / g.degree(v));
  };
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    const auto d = g.degree(u);
    if (d == 0 || d > theta)
      continue;
    walk(u, j, frac(d, g.num_vertices() * theta));
  }
  return out;
}

/// Degeneracy as max over vertex subsets of the induced minimum degree.
inline std::size_t degeneracy_by_subsets(const Graph &g) {
  const auto n = g.num_vertices();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t min_deg = SIZE_MAX;
    for (Vertex v = 0; v < n; ++v) {
      if (!((mask >> v) & 1))
        continue;
      std::size_t d = 0;
      for (Vertex w : g.neighbors(v))
        d += (mask >> w) & 1;
      min_deg = std::min(min_deg, d);
    }
    best = std::max(best, min_deg);
  }
  return best;
}

/// Erdős–Rényi style random simple graph on n vertices with edge probability p.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng))
        edges.push_back({u, v});
  std::shuffle(edges.begin(), edges.end(), rng);
  return Graph::from_edges(n, edges);
}

/// Oracle wrapper that records every query in order, for accounting checks.
class TracingOracle {
public:
  struct Record {
    char kind; // 'd', 'n', 'p', 'u'
    Vertex vertex;
    std::uint64_t answer;
  };

  TracingOracle(const Graph &g, std::uint64_t seed) : inner_(g, seed) {}

  std::size_t num_vertices() const { return inner_.num_vertices(); }
  std::size_t degree(Vertex v) {
    auto d = inner_.degree(v);
    trace.push_back({'d', v, d});
    return d;
  }
  std::optional<Vertex> neighbor(Vertex v, std::size_t i) {
    auto w = inner_.neighbor(v, i);
    trace.push_back({'n', v, w ? *w : UINT64_MAX});
    return w;
  }
  bool pair(Vertex u, Vertex v) {
    auto b = inner_.pair(u, v);
    trace.push_back({'p', u, b});
    return b;
  }
  Vertex uniform_vertex() {
    auto v = inner_.uniform_vertex();
    trace.push_back({'u', v, v});
    return v;
  }
  std::uint64_t draw_below(std::uint64_t bound) { return inner_.draw_below(bound); }
  const QueryCounts &counts() const { return inner_.counts(); }

  std::vector<Record> trace;

private:
  OracleSession inner_;
};

static_assert(QueryOracle<TracingOracle>);

} // namespace arbsample::oracle
