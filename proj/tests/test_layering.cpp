#include "arbsample/errors.hpp"
#include "arbsample/generators.hpp"
#include "arbsample/layering.hpp"
#include "arbsample/params.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace arbsample;

namespace {

const LayeredPartition &covered(const LayeringResult &r) {
  EXPECT_TRUE(std::holds_alternative<LayeredPartition>(r));
  return std::get<LayeredPartition>(r);
}

/// Straight transcription of the layer definition with a quadratic sweep.
std::optional<std::vector<std::uint32_t>> naive_levels(const Graph &g, std::uint64_t theta,
                                                       double beta) {
  const auto n = g.num_vertices();
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> level(n, kNone);
  std::size_t assigned = 0;
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) <= theta) {
      level[v] = 0;
      ++assigned;
    }
  for (std::uint32_t i = 0; assigned < n; ++i) {
    std::vector<Vertex> next;
    for (Vertex v = 0; v < n; ++v) {
      if (level[v] != kNone)
        continue;
      std::size_t lower = 0;
      for (Vertex w : g.neighbors(v))
        lower += level[w] != kNone && level[w] <= i;
      if (static_cast<double>(lower) >= (1.0 - beta) * static_cast<double>(g.degree(v)))
        next.push_back(v);
    }
    if (next.empty())
      return std::nullopt;
    for (Vertex v : next)
      level[v] = i + 1;
    assigned += next.size();
  }
  return level;
}

Graph cube() {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < 8; ++v)
    for (Vertex bit = 1; bit < 8; bit <<= 1)
      if ((v ^ bit) > v)
        edges.push_back({v, v ^ bit});
  return Graph::from_edges(8, edges);
}

} // namespace

TEST(DefaultParams, Examples) {
  auto p = default_params(1024, 2, 0.5);
  EXPECT_EQ(p.theta, 160u);
  EXPECT_EQ(p.ell, 10u);
  EXPECT_DOUBLE_EQ(p.beta, 0.025);
  EXPECT_EQ(p.rho, 1024u * 160u * 11u);

  auto q = default_params(2, 1, 0.5);
  EXPECT_EQ(q.theta, 8u);
  EXPECT_EQ(q.ell, 1u);
  EXPECT_DOUBLE_EQ(q.beta, 0.25);
  EXPECT_EQ(q.rho, 32u);

  EXPECT_EQ(default_params(2, 1, 1.0 - 1e-9).theta, 5u);
}

TEST(DefaultParams, DecimalEpsDoesNotRoundUpSpuriously) {
  // 4 * 1 * 6 / 0.1 is 240 in exact decimal arithmetic.
  EXPECT_EQ(default_params(64, 1, 0.1).theta, 240u);
  EXPECT_EQ(default_params(65, 1, 0.5).theta, 56u);
}

TEST(DefaultParams, ThetaNeverBelowBound) {
  for (std::size_t n : {2u, 3u, 17u, 1000u, 4096u})
    for (std::uint32_t a : {1u, 2u, 5u, 8u})
      for (double eps : {0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.99}) {
        auto p = default_params(n, a, eps);
        const double bound = 4.0 * a * ceil_log2(n) / eps;
        EXPECT_GE(static_cast<double>(p.theta), bound * (1 - 1e-12));
        EXPECT_LT(static_cast<double>(p.theta), bound + 1);
        EXPECT_EQ(p.rho, n * p.theta * (p.ell + 1));
      }
}

TEST(DefaultParams, RejectsBadInput) {
  EXPECT_THROW(default_params(1024, 2, 0.0), InputError);
  EXPECT_THROW(default_params(1024, 2, 1.0), InputError);
  EXPECT_THROW(default_params(1024, 0, 0.5), InputError);
  EXPECT_THROW(default_params(1, 1, 0.5), InputError);
}

TEST(CeilLog2, SmallValues) {
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(3), 2u);
  EXPECT_EQ(ceil_log2(64), 6u);
  EXPECT_EQ(ceil_log2(65), 7u);
  EXPECT_EQ(ceil_log2(1024), 10u);
}

TEST(ComputeLayering, PathIsAllLeaves) {
  auto p = covered(compute_layering(gen_path(8).graph, 2, 0.3));
  EXPECT_EQ(p.depth, 0u);
  for (auto l : p.level)
    EXPECT_EQ(l, 0u);
}

TEST(ComputeLayering, StarCenterAtLevelOne) {
  auto p = covered(compute_layering(gen_star(9).graph, 2, 0.1));
  EXPECT_EQ(p.depth, 1u);
  EXPECT_EQ(p.level[0], 1u);
  for (Vertex v = 1; v < 9; ++v)
    EXPECT_EQ(p.level[v], 0u);
  EXPECT_EQ(p.layer_sizes(), (std::vector<std::size_t>{8, 1}));
  EXPECT_EQ(p.remaining_sizes(), (std::vector<std::size_t>{9, 1, 0}));
}

TEST(ComputeLayering, CompleteGraphNotCovered) {
  auto r = compute_layering(gen_complete(5).graph, 1, 0.01);
  ASSERT_TRUE(std::holds_alternative<NotCovered>(r));
  EXPECT_EQ(std::get<NotCovered>(r).unassigned, 5u);
}

TEST(ComputeLayering, RejectsBadParameters) {
  Graph g = gen_path(4).graph;
  EXPECT_THROW(compute_layering(g, 0, 0.5), InputError);
  EXPECT_THROW(compute_layering(g, 2, 0.0), InputError);
  EXPECT_THROW(compute_layering(g, 2, 1.0), InputError);
}

TEST(ComputeLayering, RequiredCountIsExactCeiling) {
  EXPECT_EQ(required_lower_neighbors(8, 0.1), 8u); // 7.2 -> 8
  EXPECT_EQ(required_lower_neighbors(10, 0.1), 9u);
  EXPECT_EQ(required_lower_neighbors(64, 0.5), 32u);
  EXPECT_EQ(required_lower_neighbors(0, 0.3), 0u);
  EXPECT_EQ(required_lower_neighbors(1, 0.999), 1u);
}

TEST(ComputeLayering, MatchesDefinitionOnRandomGraphs) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng() % 40;
    const double density = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
    Graph g = oracle::random_graph(n, density, rng());
    const std::uint64_t theta = 1 + rng() % 6;
    const double beta = std::array{0.125, 0.25, 0.5, 0.75}[rng() % 4];

    auto result = compute_layering(g, theta, beta);
    auto naive = naive_levels(g, theta, beta);
    ASSERT_EQ(naive.has_value(), std::holds_alternative<LayeredPartition>(result));
    if (!naive)
      continue;
    const auto &p = std::get<LayeredPartition>(result);
    EXPECT_EQ(p.level, *naive);
    EXPECT_TRUE(is_valid_layering(g, p));

    // Lowering any vertex by one level breaks the definition.
    for (Vertex v = 0; v < n; ++v) {
      if (p.level[v] == 0)
        continue;
      LayeredPartition lowered = p;
      --lowered.level[v];
      EXPECT_FALSE(is_valid_layering(g, lowered));
    }
  }
}

TEST(ComputeLayering, DepthBoundAndHalvingForCertifiedGraphs) {
  std::vector<GeneratedGraph> graphs;
  graphs.push_back(gen_star(65));
  graphs.push_back(gen_path(64));
  graphs.push_back(gen_kary_tree(64, 2));
  graphs.push_back(gen_kary_tree(4, 3));
  for (std::uint32_t a : {1u, 2u, 4u})
    graphs.push_back(gen_alpha_forests(256, a, 7 + a));
  graphs.push_back(gen_matching_plus_regular(64, 4, 3));
  graphs.push_back(gen_alpha_regular(100, 40, 2));

  for (const auto &gen : graphs) {
    for (double eps : {0.1, 0.5, 0.9}) {
      const auto params = default_params(gen.graph.num_vertices(), gen.declared_alpha, eps);
      auto p = covered(compute_layering(gen.graph, params.theta, params.beta));
      EXPECT_LE(p.depth, params.ell) << gen.family;
      auto w = p.remaining_sizes();
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        EXPECT_LE(w[i + 1], (w[i] + 1) / 2) << gen.family << " level " << i;
    }
  }
}

TEST(ComputeLayering, WideTreeHasTwoLevels) {
  auto gen = gen_kary_tree(64, 2);
  const auto params = default_params(gen.graph.num_vertices(), 1, 0.9);
  ASSERT_EQ(params.theta, 58u);
  auto p = covered(compute_layering(gen.graph, params.theta, params.beta));
  EXPECT_EQ(p.depth, 2u);
  EXPECT_EQ(p.level[0], 2u);
  EXPECT_EQ(p.level[1], 1u);
}

TEST(Degeneracy, Examples) {
  EXPECT_EQ(degeneracy(gen_path(10).graph), 1u);
  EXPECT_EQ(degeneracy(gen_kary_tree(3, 3).graph), 1u);
  EXPECT_EQ(degeneracy(gen_complete(5).graph), 4u);
  EXPECT_EQ(degeneracy(cube()), 3u);
  EXPECT_EQ(degeneracy(Graph::from_edges(3, {})), 0u);
}

TEST(Degeneracy, MatchesSubsetOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Graph g = oracle::random_graph(4 + seed % 9, 0.15 + 0.01 * static_cast<double>(seed), seed);
    EXPECT_EQ(degeneracy(g), oracle::degeneracy_by_subsets(g)) << "seed " << seed;
  }
  EXPECT_EQ(oracle::degeneracy_by_subsets(cube()), 3u);
}

TEST(ArboricityBruteforce, Examples) {
  EXPECT_EQ(arboricity_bruteforce(gen_path(16).graph), 1u);
  EXPECT_EQ(arboricity_bruteforce(gen_star(16).graph), 1u);
  EXPECT_EQ(arboricity_bruteforce(gen_kary_tree(3, 2).graph), 1u);
  EXPECT_EQ(arboricity_bruteforce(gen_complete(4).graph), 2u);
  EXPECT_EQ(arboricity_bruteforce(gen_complete(5).graph), 3u);
  EXPECT_EQ(arboricity_bruteforce(Graph::from_edges(4, {})), 0u);
  EXPECT_THROW(arboricity_bruteforce(gen_path(17).graph), SizeError);
}

TEST(ArboricityBruteforce, DegeneracyAtMostTwiceArboricity) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    Graph g = oracle::random_graph(3 + seed % 10, 0.1 + 0.01 * static_cast<double>(seed), seed);
    const auto a = arboricity_bruteforce(g);
    EXPECT_LE(degeneracy(g), 2 * a);
    // The density floor of the whole graph is a lower bound.
    if (g.num_vertices() >= 2)
      EXPECT_GE(a * (g.num_vertices() - 1), g.num_edges());
  }
}
