#include "arbsample/layering.hpp"

#include "arbsample/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace arbsample {

std::vector<std::size_t> LayeredPartition::layer_sizes() const {
  std::vector<std::size_t> sizes(depth + 1, 0);
  for (auto l : level)
    ++sizes[l];
  return sizes;
}

std::vector<std::size_t> LayeredPartition::remaining_sizes() const {
  auto sizes = layer_sizes();
  std::vector<std::size_t> w(depth + 2, 0);
  w[0] = level.size();
  for (std::uint32_t i = 0; i <= depth; ++i)
    w[i + 1] = w[i] - sizes[i];
  return w;
}

std::size_t required_lower_neighbors(std::size_t d, double beta) {
  // ceil((1 - beta) d) = d - floor(beta d); floor is corrected with fma so
  // that the product is never rounded across an integer.
  const auto dd = static_cast<double>(d);
  double q = std::floor(beta * dd);
  if (std::fma(beta, dd, -q) < 0.0)
    q -= 1.0;
  else if (std::fma(beta, dd, -(q + 1.0)) >= 0.0)
    q += 1.0;
  q = std::clamp(q, 0.0, dd);
  return d - static_cast<std::size_t>(q);
}

LayeringResult compute_layering(const Graph &g, std::uint64_t theta, double beta) {
  if (theta < 1)
    throw InputError("theta must be at least 1");
  if (!(beta > 0.0 && beta < 1.0))
    throw InputError("beta must lie in (0, 1)");

  const std::size_t n = g.num_vertices();
  constexpr auto kUnassigned = std::numeric_limits<std::uint32_t>::max();

  LayeredPartition p;
  p.theta = theta;
  p.beta = beta;
  p.level.assign(n, kUnassigned);

  std::vector<std::size_t> need(n);
  std::vector<std::size_t> lower(n, 0);
  std::vector<Vertex> frontier;
  std::vector<Vertex> pending;

  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) <= theta) {
      p.level[v] = 0;
      frontier.push_back(v);
    } else {
      need[v] = required_lower_neighbors(g.degree(v), beta);
      pending.push_back(v);
    }
  }

  std::uint32_t current = 0;
  while (!pending.empty()) {
    for (Vertex u : frontier)
      for (Vertex w : g.neighbors(u))
        ++lower[w];

    frontier.clear();
    std::erase_if(pending, [&](Vertex v) {
      if (lower[v] >= need[v]) {
        frontier.push_back(v);
        return true;
      }
      return false;
    });
    if (frontier.empty())
      return NotCovered{current, pending.size()};

    ++current;
    for (Vertex v : frontier)
      p.level[v] = current;
  }
  p.depth = current;
  return p;
}

bool is_valid_layering(const Graph &g, const LayeredPartition &p) {
  const std::size_t n = g.num_vertices();
  if (p.level.size() != n)
    return false;
  for (Vertex v = 0; v < n; ++v) {
    const auto lv = p.level[v];
    if (lv > p.depth)
      return false;
    if ((lv == 0) != (g.degree(v) <= p.theta))
      return false;
    if (lv == 0)
      continue;

    const auto need = required_lower_neighbors(g.degree(v), p.beta);
    std::size_t below = 0;     // neighbors at levels <= lv - 1
    std::size_t far_below = 0; // neighbors at levels <= lv - 2
    for (Vertex w : g.neighbors(v)) {
      if (p.level[w] + 1 <= lv)
        ++below;
      if (p.level[w] + 2 <= lv)
        ++far_below;
    }
    if (below < need)
      return false;
    if (lv >= 2 && far_below >= need)
      return false;
  }
  auto sizes = p.layer_sizes();
  return std::none_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; }) ||
         n == 0;
}

std::size_t degeneracy(const Graph &g) {
  const std::size_t n = g.num_vertices();
  if (n == 0)
    return 0;

  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }

  // Bucket queue keyed by current degree.
  std::vector<std::vector<Vertex>> buckets(max_deg + 1);
  for (Vertex v = 0; v < n; ++v)
    buckets[deg[v]].push_back(v);
  std::vector<bool> removed(n, false);

  std::size_t best = 0;
  std::size_t cursor = 0;
  for (std::size_t peeled = 0; peeled < n;) {
    while (buckets[cursor].empty())
      ++cursor;
    Vertex v = buckets[cursor].back();
    buckets[cursor].pop_back();
    if (removed[v] || deg[v] != cursor)
      continue; // stale entry
    removed[v] = true;
    ++peeled;
    best = std::max(best, cursor);
    for (Vertex w : g.neighbors(v)) {
      if (removed[w])
        continue;
      --deg[w];
      buckets[deg[w]].push_back(w);
      cursor = std::min(cursor, deg[w]);
    }
  }
  return best;
}

std::size_t arboricity_bruteforce(const Graph &g) {
  const std::size_t n = g.num_vertices();
  if (n > kBruteforceMaxVertices)
    throw SizeError("arboricity brute force supports at most 16 vertices, got " +
                    std::to_string(n));

  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge &e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }

  std::size_t best = 0;
  const std::uint32_t full = n == 0 ? 0 : (n == 32 ? ~0u : (1u << n) - 1);
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k < 2)
      continue;
    std::size_t twice_m = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
      twice_m += std::popcount(adj[std::countr_zero(rest)] & mask);
    const std::size_t m = twice_m / 2;
    best = std::max(best, (m + k - 2) / (k - 1));
  }
  return best;
}

} // namespace arbsample
