#include "arbsample/generators.hpp"

#include "arbsample/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

namespace arbsample {

namespace {

constexpr std::size_t kMaxGeneratedVertices = 10'000'000;
constexpr int kRegularRetries = 1000;

std::uint64_t key(Vertex a, Vertex b) {
  if (a > b)
    std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

class EdgeSet {
public:
  bool add(Vertex a, Vertex b) {
    if (!seen_.insert(key(a, b)).second)
      return false;
    edges_.push_back({a, b});
    return true;
  }
  std::vector<Edge> &edges() { return edges_; }
  std::size_t size() const { return edges_.size(); }

private:
  std::unordered_set<std::uint64_t> seen_;
  std::vector<Edge> edges_;
};

/// Random recursive tree over a shuffled vertex order; edges are (parent, child).
std::vector<Edge> random_spanning_tree(std::size_t n, std::mt19937_64 &rng) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Edge> tree;
  tree.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    tree.push_back({order[pick(rng)], order[i]});
  }
  return tree;
}

struct ForestUnion {
  std::vector<Edge> edges;
  std::vector<std::vector<Edge>> forests;
};

ForestUnion forest_union(std::size_t n, std::uint32_t alpha, std::mt19937_64 &rng,
                         std::optional<std::size_t> target) {
  std::vector<std::vector<Edge>> trees;
  for (std::uint32_t f = 0; f < alpha; ++f) {
    trees.push_back(random_spanning_tree(n, rng));
    std::shuffle(trees.back().begin(), trees.back().end(), rng);
  }

  ForestUnion out;
  out.forests.resize(alpha);
  EdgeSet set;
  const std::size_t limit = target.value_or(std::numeric_limits<std::size_t>::max());
  for (std::size_t idx = 0; idx + 1 < n && set.size() < limit; ++idx) {
    for (std::uint32_t f = 0; f < alpha && set.size() < limit; ++f) {
      const Edge e = trees[f][idx];
      if (set.add(e.u, e.v))
        out.forests[f].push_back(e);
    }
  }
  out.edges = std::move(set.edges());
  return out;
}

/// Circulant alpha-regular graph on `count` vertices starting at `base`.
std::vector<Edge> circulant(std::size_t count, std::uint32_t alpha, Vertex base) {
  std::vector<Edge> edges;
  for (std::uint32_t s = 1; s <= alpha / 2; ++s)
    for (std::size_t i = 0; i < count; ++i)
      edges.push_back({static_cast<Vertex>(base + i), static_cast<Vertex>(base + (i + s) % count)});
  if (alpha % 2 == 1)
    for (std::size_t i = 0; i < count / 2; ++i)
      edges.push_back({static_cast<Vertex>(base + i), static_cast<Vertex>(base + i + count / 2)});
  return edges;
}

void check_regular_realizable(std::size_t count, std::uint32_t alpha) {
  if (alpha < 1)
    throw InputError("regular degree must be at least 1");
  if (alpha >= count)
    throw InputError("no " + std::to_string(alpha) + "-regular simple graph on " +
                     std::to_string(count) + " vertices");
  if ((static_cast<std::uint64_t>(alpha) * count) % 2 != 0)
    throw InputError("alpha * vertex count must be even for a regular graph");
}

/// alpha-regular graph on vertices [base, base + count).
std::vector<Edge> regular_block(std::size_t count, std::uint32_t alpha, Vertex base,
                                std::mt19937_64 &rng) {
  check_regular_realizable(count, alpha);
  for (int attempt = 0; attempt < kRegularRetries; ++attempt) {
    EdgeSet set;
    bool clean = true;
    std::vector<Vertex> perm(count);
    for (std::uint32_t c = 0; c < alpha / 2 && clean; ++c) {
      std::iota(perm.begin(), perm.end(), base);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < count && clean; ++i)
        clean = set.add(perm[i], perm[(i + 1) % count]);
    }
    if (alpha % 2 == 1 && clean) {
      std::iota(perm.begin(), perm.end(), base);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i + 1 < count && clean; i += 2)
        clean = set.add(perm[i], perm[i + 1]);
    }
    if (clean)
      return std::move(set.edges());
  }
  return circulant(count, alpha, base);
}

std::uint32_t regular_arboricity_bound(std::uint32_t degree) { return (degree + 2) / 2; }

void check_size(std::size_t n) {
  if (n > kMaxGeneratedVertices)
    throw SizeError("generated graph would have " + std::to_string(n) + " vertices (limit 10^7)");
}

std::int64_t need(const GenSpec &spec, const std::string &name) {
  auto it = spec.params.find(name);
  if (it == spec.params.end())
    throw InputError("family '" + spec.family + "' needs parameter '" + name + "'");
  if (it->second < 0)
    throw InputError("parameter '" + name + "' must be non-negative");
  return it->second;
}

std::vector<bool> bits_of(std::int64_t mask, std::size_t count) {
  std::vector<bool> bits(count);
  for (std::size_t i = 0; i < count; ++i)
    bits[i] = i < 63 && ((mask >> i) & 1) != 0;
  return bits;
}

} // namespace

std::map<std::string, std::int64_t> parse_param_list(const std::string &text) {
  std::map<std::string, std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InputError("expected key=value, got '" + item + "'");
    try {
      std::size_t used = 0;
      auto value = std::stoll(item.substr(eq + 1), &used, 0);
      if (used != item.size() - eq - 1)
        throw InputError("trailing characters in '" + item + "'");
      out[item.substr(0, eq)] = value;
    } catch (const std::logic_error &) {
      throw InputError("non-integer value in '" + item + "'");
    }
  }
  return out;
}

GeneratedGraph gen_path(std::size_t n) {
  if (n < 2)
    throw InputError("path needs n >= 2");
  check_size(n);
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v)
    edges.push_back({v, v + 1});
  GeneratedGraph out{Graph::from_edges(n, edges), "path", 1, {edges}, {}, {}};
  return out;
}

GeneratedGraph gen_star(std::size_t n) {
  if (n < 2)
    throw InputError("star needs n >= 2");
  check_size(n);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v)
    edges.push_back({0, v});
  return {Graph::from_edges(n, edges), "star", 1, {edges}, {}, {}};
}

GeneratedGraph gen_complete(std::size_t n) {
  if (n < 2)
    throw InputError("complete graph needs n >= 2");
  if (n > 20'000)
    throw SizeError("complete graph too large");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      edges.push_back({u, v});
  return {Graph::from_edges(n, edges), "complete", static_cast<std::uint32_t>((n + 1) / 2), {}, {}, {}};
}

GeneratedGraph gen_kary_tree(std::uint32_t k, std::uint32_t depth, std::uint32_t critical_depth) {
  if (k < 2)
    throw InputError("tree branching k must be at least 2");
  if (depth < 1)
    throw InputError("tree depth must be at least 1");

  // Vertex count 1 + k * sum_{t < D} (k-1)^t, checked incrementally.
  std::size_t n = 1;
  std::size_t level_count = k;
  for (std::uint32_t t = 1; t <= depth; ++t) {
    n += level_count;
    check_size(n);
    if (t < depth) {
      if (level_count > kMaxGeneratedVertices / std::max<std::uint32_t>(1, k - 1))
        throw SizeError("tree too large");
      level_count *= (k - 1);
    }
  }

  TreeInfo info;
  info.branching = k;
  info.depth = depth;
  info.critical_depth = critical_depth;
  info.vertex_depth.assign(n, 0);

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  Vertex next = 1;
  for (Vertex parent = 0; next < n; ++parent) {
    const std::uint32_t children = parent == 0 ? k : k - 1;
    for (std::uint32_t c = 0; c < children && next < n; ++c) {
      edges.push_back({parent, next});
      info.vertex_depth[next] = info.vertex_depth[parent] + 1;
      ++next;
    }
  }
  for (auto d : info.vertex_depth) {
    if (d <= critical_depth)
      ++info.critical;
    if (d <= 2ull * critical_depth)
      ++info.shallow;
    else
      ++info.deep;
  }

  GeneratedGraph out{Graph::from_edges(n, edges), "kary_tree", 1, {edges}, std::move(info), {}};
  return out;
}

GeneratedGraph gen_alpha_forests(std::size_t n, std::uint32_t alpha, std::uint64_t seed,
                                 std::optional<std::size_t> target_edges) {
  if (n < 2)
    throw InputError("alpha_forests needs n >= 2");
  if (alpha < 1)
    throw InputError("alpha must be at least 1");
  check_size(n);
  std::mt19937_64 rng(seed);
  auto fu = forest_union(n, alpha, rng, target_edges);
  return {Graph::from_edges(n, fu.edges), "alpha_forests", alpha, std::move(fu.forests), {}, {}};
}

GeneratedGraph gen_alpha_regular(std::size_t n, std::uint32_t alpha, std::uint64_t seed) {
  check_size(n);
  std::mt19937_64 rng(seed);
  auto edges = regular_block(n, alpha, 0, rng);
  return {Graph::from_edges(n, edges), "alpha_regular", regular_arboricity_bound(alpha), {}, {}, {}};
}

GeneratedGraph gen_matching_plus_regular(std::size_t n, std::uint32_t alpha, std::uint64_t seed) {
  if (alpha < 1)
    throw InputError("alpha must be at least 1");
  if (n % alpha != 0)
    throw InputError("alpha must divide n");
  check_size(n);
  const std::size_t regular = n / alpha;
  const std::size_t matched = n - regular;
  if (matched % 2 != 0)
    throw InputError("n - n/alpha must be even to admit a perfect matching");
  check_regular_realizable(regular, alpha);

  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < matched; v += 2)
    edges.push_back({v, v + 1});
  auto block = regular_block(regular, alpha, static_cast<Vertex>(matched), rng);
  edges.insert(edges.end(), block.begin(), block.end());
  return {Graph::from_edges(n, edges), "matching_plus_regular", alpha, {}, {}, {}};
}

GeneratedGraph gen_disjointness_embedding(std::size_t n_prime, std::size_t m_prime,
                                          std::uint32_t alpha, const std::vector<bool> &x,
                                          const std::vector<bool> &y, std::uint64_t seed) {
  if (alpha < 1 || m_prime < 1 || n_prime < 2)
    throw InputError("need n' >= 2, m' >= 1, alpha >= 1");
  if (alpha >= n_prime)
    throw InputError("H needs arboricity alpha < n'");
  if ((2 * m_prime) % alpha != 0)
    throw InputError("2m'/alpha must be an integer");
  if ((static_cast<std::uint64_t>(n_prime) * alpha) % (2 * m_prime) != 0)
    throw InputError("N = n' alpha / 2m' must be an integer");
  const std::size_t blocks = n_prime * alpha / (2 * m_prime);
  const std::size_t block_size = 2 * m_prime / alpha;
  if (x.size() != blocks || y.size() != blocks)
    throw InputError("x and y must both have length N = " + std::to_string(blocks));
  if (m_prime > static_cast<std::size_t>(alpha) * (n_prime - 1))
    throw InputError("H cannot have more than alpha (n' - 1) edges");
  check_regular_realizable(block_size, 2 * alpha);
  check_size(n_prime + blocks * block_size);

  std::mt19937_64 rng(seed);
  auto h = forest_union(n_prime, alpha, rng, m_prime);
  if (h.edges.size() != m_prime)
    throw InputError("could not draw " + std::to_string(m_prime) + " distinct forest edges on " +
                     std::to_string(n_prime) + " vertices; lower m'");

  EmbeddingInfo info;
  info.n_prime = n_prime;
  info.m_prime = m_prime;
  info.alpha = alpha;
  info.blocks = blocks;
  info.block_size = block_size;
  const std::size_t n = n_prime + blocks * block_size;
  info.block.assign(n, 0);

  std::vector<Edge> edges = h.edges;
  for (std::size_t i = 1; i <= blocks; ++i) {
    const auto base = static_cast<Vertex>(n_prime + (i - 1) * block_size);
    for (std::size_t v = 0; v < block_size; ++v)
      info.block[base + v] = static_cast<std::uint32_t>(i);
    if (x[i - 1] && y[i - 1]) {
      ++info.intersections;
      auto k = regular_block(block_size, 2 * alpha, base, rng);
      edges.insert(edges.end(), k.begin(), k.end());
    }
  }

  const std::uint32_t declared =
      info.intersections > 0 ? std::max(alpha, regular_arboricity_bound(2 * alpha)) : alpha;
  return {Graph::from_edges(n, edges), "disjointness_embedding", declared, {}, {}, std::move(info)};
}

GeneratedGraph generate(const GenSpec &spec) {
  auto u32 = [&](const std::string &name) { return static_cast<std::uint32_t>(need(spec, name)); };
  auto sz = [&](const std::string &name) { return static_cast<std::size_t>(need(spec, name)); };

  const std::string &f = spec.family;
  if (f == "path")
    return gen_path(sz("n"));
  if (f == "star")
    return gen_star(sz("n"));
  if (f == "complete")
    return gen_complete(sz("n"));
  if (f == "kary_tree") {
    auto it = spec.params.find("L");
    return gen_kary_tree(u32("k"), u32("depth"),
                         it == spec.params.end() ? 1u : static_cast<std::uint32_t>(it->second));
  }
  if (f == "alpha_forests") {
    std::optional<std::size_t> m;
    if (spec.params.contains("m"))
      m = sz("m");
    return gen_alpha_forests(sz("n"), u32("alpha"), spec.seed, m);
  }
  if (f == "alpha_regular")
    return gen_alpha_regular(sz("n"), u32("alpha"), spec.seed);
  if (f == "matching_plus_regular")
    return gen_matching_plus_regular(sz("n"), u32("alpha"), spec.seed);
  if (f == "disjointness_embedding") {
    const auto n_prime = sz("nprime");
    const auto m_prime = sz("mprime");
    const auto alpha = u32("alpha");
    if (m_prime == 0 || alpha == 0)
      throw InputError("mprime and alpha must be positive");
    const std::size_t blocks = n_prime * alpha / (2 * m_prime);
    return gen_disjointness_embedding(n_prime, m_prime, alpha, bits_of(need(spec, "x"), blocks),
                                      bits_of(need(spec, "y"), blocks), spec.seed);
  }
  throw InputError("unknown graph family '" + f + "'");
}

bool is_forest_decomposition(const Graph &g, const std::vector<std::vector<Edge>> &forests) {
  std::set<std::uint64_t> expected;
  for (const Edge &e : g.edges())
    expected.insert(key(e.u, e.v));

  std::set<std::uint64_t> covered;
  std::vector<Vertex> parent(g.num_vertices());
  auto find = [&](Vertex v) {
    while (parent[v] != v)
      v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto &forest : forests) {
    std::iota(parent.begin(), parent.end(), Vertex{0});
    for (const Edge &e : forest) {
      if (e.u >= g.num_vertices() || e.v >= g.num_vertices())
        return false;
      if (!expected.contains(key(e.u, e.v)) || !covered.insert(key(e.u, e.v)).second)
        return false;
      auto a = find(e.u), b = find(e.v);
      if (a == b)
        return false;
      parent[a] = b;
    }
  }
  return covered.size() == expected.size();
}

} // namespace arbsample
