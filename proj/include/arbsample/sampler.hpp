#pragma once

#include "arbsample/errors.hpp"
#include "arbsample/oracle.hpp"
#include "arbsample/params.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace arbsample {

/// One invocation of the edge sampler. `edge` is empty on failure.
struct WalkOutcome {
  std::optional<OrderedEdge> edge;
  QueryCounts queries;
  std::uint32_t walk_length = 0;
};

/// Result of a retry loop that ended in success.
struct SampledEdge {
  OrderedEdge edge;
  std::size_t attempts = 0;
  QueryCounts queries;
};

/// Upper bound on oracle calls spent by a single sample_edge_once.
constexpr std::uint64_t max_queries_per_attempt(std::uint32_t ell) { return 2ull * ell + 3; }

/// 100 * rho / m_hint when a hint is given, else one million.
std::size_t default_max_attempts(const SamplerParams &params,
                                 std::optional<std::size_t> m_hint = {});

/// Degree cap ceil(1/eps) of the total-variation baseline.
std::uint64_t tvd_degree_cap(double eps);

inline Edge to_unordered(const OrderedEdge &e) { return {e.from, e.to}; }

namespace detail {

struct Visit {
  Vertex vertex;
  std::size_t degree;
};

/// Accept with probability d / bound using an integer draw, so the coin is exact.
template <QueryOracle O> bool exact_coin(O &oracle, std::size_t d, std::uint64_t bound) {
  return oracle.draw_below(bound) < d;
}

template <QueryOracle O> Vertex uniform_neighbor(O &oracle, Vertex v, std::size_t d) {
  // d was obtained from a degree query on v, so the index is always in range.
  return *oracle.neighbor(v, static_cast<std::size_t>(oracle.draw_below(d)) + 1);
}

template <QueryOracle O> std::optional<Visit> leaf(O &oracle, std::uint64_t theta) {
  const Vertex u = oracle.uniform_vertex();
  const std::size_t d = oracle.degree(u);
  if (d > theta)
    return std::nullopt;
  if (!exact_coin(oracle, d, theta))
    return std::nullopt;
  return Visit{u, d};
}

template <QueryOracle O>
std::optional<Visit> walk(O &oracle, std::uint64_t theta, std::uint32_t length) {
  auto current = leaf(oracle, theta);
  if (!current)
    return std::nullopt;
  for (std::uint32_t i = 1; i <= length; ++i) {
    const Vertex next = uniform_neighbor(oracle, current->vertex, current->degree);
    const std::size_t d = oracle.degree(next);
    if (d <= theta)
      return std::nullopt; // walk re-entered L_0
    current = Visit{next, d};
  }
  return current;
}

} // namespace detail

/// Draws u uniformly; returns it with probability d(u)/theta when d(u) <= theta.
/// Spends one uniform draw and one degree query.
template <QueryOracle O> std::optional<Vertex> sample_a_leaf(O &oracle, std::uint64_t theta) {
  if (theta < 1)
    throw InputError("theta must be at least 1");
  auto v = detail::leaf(oracle, theta);
  return v ? std::optional<Vertex>(v->vertex) : std::nullopt;
}

/// Walk of `length` steps from a leaf; fails if any step lands on a vertex of
/// degree <= theta. Spends at most 2 + 2 * length queries.
template <QueryOracle O>
std::optional<Vertex> random_walk(O &oracle, const SamplerParams &params, std::uint32_t length) {
  if (length > params.ell)
    throw InputError("walk length " + std::to_string(length) + " exceeds ell = " +
                     std::to_string(params.ell));
  auto v = detail::walk(oracle, params.theta, length);
  return v ? std::optional<Vertex>(v->vertex) : std::nullopt;
}

/// A single attempt: uniform length in [0, ell], a walk, then a uniform
/// neighbor of the endpoint. Every ordered edge comes out with probability in
/// [(1 - eps/2)/rho, 1/rho] when the graph's arboricity is at most alpha.
template <QueryOracle O> WalkOutcome sample_edge_once(O &oracle, const SamplerParams &params) {
  const QueryCounts before = oracle.counts();
  WalkOutcome out;
  out.walk_length = static_cast<std::uint32_t>(oracle.draw_below(params.ell + 1ull));
  if (auto end = detail::walk(oracle, params.theta, out.walk_length)) {
    const Vertex w = detail::uniform_neighbor(oracle, end->vertex, end->degree);
    out.edge = OrderedEdge{end->vertex, w};
  }
  out.queries = oracle.counts() - before;
  return out;
}

/// Repeats sample_edge_once until it returns an edge. Throws ExhaustedError
/// after `max_attempts` failures; never resamples silently.
template <QueryOracle O>
SampledEdge sample_edge(O &oracle, const SamplerParams &params, std::size_t max_attempts) {
  SampledEdge result;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    WalkOutcome once = sample_edge_once(oracle, params);
    result.queries += once.queries;
    if (once.edge) {
      result.edge = *once.edge;
      result.attempts = attempt;
      return result;
    }
  }
  throw ExhaustedError(max_attempts);
}

/// One attempt of the classical rejection sampler: uniform u, keep it with
/// probability d(u)/dmax, then a uniform incident edge.
template <QueryOracle O> std::optional<OrderedEdge> rejection_attempt(O &oracle, std::uint64_t dmax) {
  if (dmax < 1)
    throw InputError("dmax must be at least 1");
  const Vertex u = oracle.uniform_vertex();
  const std::size_t d = oracle.degree(u);
  if (d > dmax)
    throw ContractError("vertex " + std::to_string(u) + " has degree " + std::to_string(d) +
                        " above the declared dmax " + std::to_string(dmax));
  if (!detail::exact_coin(oracle, d, dmax))
    return std::nullopt;
  return OrderedEdge{u, detail::uniform_neighbor(oracle, u, d)};
}

template <QueryOracle O>
SampledEdge rejection_baseline(O &oracle, std::uint64_t dmax, std::size_t max_attempts) {
  SampledEdge result;
  const QueryCounts before = oracle.counts();
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    if (auto e = rejection_attempt(oracle, dmax)) {
      result.edge = *e;
      result.attempts = attempt;
      result.queries = oracle.counts() - before;
      return result;
    }
  }
  throw ExhaustedError(max_attempts);
}

/// One attempt of the baseline that ignores vertices of degree above
/// ceil(1/eps); each kept ordered edge has probability 1/(n * cap).
template <QueryOracle O> std::optional<OrderedEdge> tvd_attempt(O &oracle, double eps) {
  const std::uint64_t cap = tvd_degree_cap(eps);
  const Vertex u = oracle.uniform_vertex();
  const std::size_t d = oracle.degree(u);
  if (d > cap || !detail::exact_coin(oracle, d, cap))
    return std::nullopt;
  return OrderedEdge{u, detail::uniform_neighbor(oracle, u, d)};
}

template <QueryOracle O>
SampledEdge tvd_baseline(O &oracle, double eps, std::size_t max_attempts) {
  SampledEdge result;
  const QueryCounts before = oracle.counts();
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    if (auto e = tvd_attempt(oracle, eps)) {
      result.edge = *e;
      result.attempts = attempt;
      result.queries = oracle.counts() - before;
      return result;
    }
  }
  throw ExhaustedError(max_attempts);
}

} // namespace arbsample
