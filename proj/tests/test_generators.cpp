#include "arbsample/errors.hpp"
#include "arbsample/generators.hpp"
#include "arbsample/layering.hpp"

#include <gtest/gtest.h>

using namespace arbsample;

namespace {

void expect_certified(const GeneratedGraph &gen) {
  const Graph &g = gen.graph;
  EXPECT_LE(degeneracy(g), 2 * gen.declared_alpha) << gen.family;
  if (!gen.forests.empty()) {
    EXPECT_TRUE(is_forest_decomposition(g, gen.forests)) << gen.family;
    EXPECT_LE(gen.forests.size(), gen.declared_alpha) << gen.family;
  }
  if (g.num_vertices() <= kBruteforceMaxVertices)
    EXPECT_LE(arboricity_bruteforce(g), gen.declared_alpha) << gen.family;
}

bool same_graph(const Graph &a, const Graph &b) {
  return a.num_vertices() == b.num_vertices() &&
         std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end());
}

} // namespace

TEST(Basic, PathStarComplete) {
  auto p = gen_path(3);
  ASSERT_EQ(p.graph.num_edges(), 2u);
  EXPECT_EQ(p.graph.edges()[0], (Edge{0, 1}));
  EXPECT_EQ(p.graph.edges()[1], (Edge{1, 2}));

  auto s = gen_star(9);
  EXPECT_EQ(s.graph.num_edges(), 8u);
  EXPECT_EQ(s.graph.degree(0), 8u);

  auto c = gen_complete(5);
  EXPECT_EQ(c.graph.num_edges(), 10u);
  EXPECT_EQ(c.declared_alpha, 3u);

  EXPECT_THROW(gen_path(1), InputError);
  for (const auto &gen : {p, s, c, gen_complete(12), gen_path(16)})
    expect_certified(gen);
}

TEST(KaryTree, SmallCases) {
  auto t1 = gen_kary_tree(3, 1);
  EXPECT_EQ(t1.graph.num_vertices(), 4u);
  EXPECT_EQ(t1.graph.degree(0), 3u);

  auto t2 = gen_kary_tree(3, 2);
  EXPECT_EQ(t2.graph.num_vertices(), 10u);
  EXPECT_EQ(t2.declared_alpha, 1u);
  EXPECT_EQ(arboricity_bruteforce(t2.graph), 1u);
  expect_certified(t2);
}

TEST(KaryTree, DegreesAndDepthCounts) {
  auto t = gen_kary_tree(4, 3, 1);
  ASSERT_TRUE(t.tree);
  const auto &info = *t.tree;
  EXPECT_EQ(t.graph.num_vertices(), 1u + 4 + 12 + 36);
  for (Vertex v = 0; v < t.graph.num_vertices(); ++v) {
    const auto d = info.vertex_depth[v];
    if (d == 3)
      EXPECT_EQ(t.graph.degree(v), 1u);
    else
      EXPECT_EQ(t.graph.degree(v), 4u); // root k children, internal k-1 children + parent
  }
  // Vertices at depth t >= 1 number k (k-1)^(t-1).
  std::vector<std::size_t> per_depth(4, 0);
  for (auto d : info.vertex_depth)
    ++per_depth[d];
  EXPECT_EQ(per_depth, (std::vector<std::size_t>{1, 4, 12, 36}));
  EXPECT_EQ(info.critical, 5u);
  EXPECT_EQ(info.shallow, 17u);
  EXPECT_EQ(info.deep, 36u);
}

TEST(KaryTree, Errors) {
  EXPECT_THROW(gen_kary_tree(1, 3), InputError);
  EXPECT_THROW(gen_kary_tree(3, 0), InputError);
  EXPECT_THROW(gen_kary_tree(100, 5), SizeError);
}

TEST(AlphaForests, SingleForestIsSpanningTree) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = gen_alpha_forests(100, 1, seed);
    EXPECT_EQ(g.graph.num_edges(), 99u);
    EXPECT_EQ(degeneracy(g.graph), 1u);
    expect_certified(g);
  }
}

TEST(AlphaForests, Certificates) {
  for (std::uint32_t a : {2u, 3u, 5u}) {
    auto g = gen_alpha_forests(100, a, a);
    EXPECT_LE(g.graph.num_edges(), a * 99u);
    EXPECT_EQ(g.forests.size(), a);
    expect_certified(g);
  }
  for (std::uint64_t seed = 0; seed < 30; ++seed)
    expect_certified(gen_alpha_forests(12, 1 + seed % 4, seed));
}

TEST(AlphaForests, EdgeTarget) {
  auto g = gen_alpha_forests(4096, 8, 3, 4096);
  EXPECT_EQ(g.graph.num_edges(), 4096u);
  for (const auto &f : g.forests)
    EXPECT_NEAR(static_cast<double>(f.size()), 512.0, 2.0);
  expect_certified(g);
}

TEST(AlphaForests, Deterministic) {
  EXPECT_TRUE(same_graph(gen_alpha_forests(80, 3, 9).graph, gen_alpha_forests(80, 3, 9).graph));
  EXPECT_FALSE(same_graph(gen_alpha_forests(80, 3, 9).graph, gen_alpha_forests(80, 3, 10).graph));
}

TEST(AlphaRegular, DegreesAndFallback) {
  for (std::uint32_t a : {1u, 2u, 3u, 4u, 7u}) {
    auto g = gen_alpha_regular(16, a, a);
    for (Vertex v = 0; v < 16; ++v)
      EXPECT_EQ(g.graph.degree(v), a);
    expect_certified(g);
  }
  // alpha = n - 1 forces the circulant construction: K_8.
  auto k8 = gen_alpha_regular(8, 7, 1);
  EXPECT_EQ(k8.graph.num_edges(), 28u);
  expect_certified(k8);
  EXPECT_THROW(gen_alpha_regular(7, 3, 1), InputError);
  EXPECT_THROW(gen_alpha_regular(5, 5, 1), InputError);
}

TEST(MatchingPlusRegular, Counts) {
  auto m1 = gen_matching_plus_regular(10, 1);
  EXPECT_EQ(m1.graph.num_edges(), 5u);

  auto g = gen_matching_plus_regular(64, 4, 2);
  EXPECT_EQ(g.graph.num_edges(), 56u);
  EXPECT_EQ(g.graph.max_degree(), 4u);
  EXPECT_EQ(g.declared_alpha, 4u);
  expect_certified(g);

  EXPECT_THROW(gen_matching_plus_regular(63, 4), InputError);
  EXPECT_THROW(gen_matching_plus_regular(12, 4), InputError); // K_3 cannot be 4-regular
}

TEST(MatchingPlusRegular, SmallInstancesCertified) {
  expect_certified(gen_matching_plus_regular(12, 2));
  expect_certified(gen_matching_plus_regular(8, 2));
  expect_certified(gen_matching_plus_regular(4, 1));
}

TEST(DisjointnessEmbedding, EdgeAccounting) {
  // n' = 64, m' = 32, alpha = 2: N = 2 blocks of 32 vertices.
  auto disjoint = gen_disjointness_embedding(64, 32, 2, {true, false}, {false, true}, 1);
  ASSERT_TRUE(disjoint.embedding);
  EXPECT_EQ(disjoint.embedding->blocks, 2u);
  EXPECT_EQ(disjoint.embedding->block_size, 32u);
  EXPECT_EQ(disjoint.graph.num_vertices(), 128u);
  EXPECT_EQ(disjoint.graph.num_edges(), 32u);
  for (const Edge &e : disjoint.graph.edges())
    EXPECT_EQ(disjoint.embedding->block[e.u], 0u);

  auto hit = gen_disjointness_embedding(64, 32, 2, {true, false}, {true, true}, 1);
  EXPECT_EQ(hit.graph.num_edges(), 96u);
  std::size_t outside = 0;
  for (const Edge &e : hit.graph.edges()) {
    EXPECT_EQ(hit.embedding->block[e.u], hit.embedding->block[e.v]);
    outside += hit.embedding->block[e.u] != 0;
  }
  EXPECT_EQ(3 * outside, 2 * hit.graph.num_edges());
  EXPECT_EQ(degeneracy(hit.graph), 4u);
  EXPECT_LE(degeneracy(hit.graph), 2 * hit.declared_alpha);
}

TEST(DisjointnessEmbedding, Errors) {
  EXPECT_THROW(gen_disjointness_embedding(64, 32, 2, {true}, {true}, 1), InputError);
  EXPECT_THROW(gen_disjointness_embedding(64, 33, 2, {true}, {true}, 1), InputError);
  EXPECT_THROW(gen_disjointness_embedding(8, 4, 2, {true, true}, {true, true}, 1), InputError); // K_4 is not 4-regular
}

TEST(Generate, DispatchAndParams) {
  auto params = parse_param_list("n=12,alpha=2");
  EXPECT_EQ(params.at("n"), 12);
  auto g = generate({"alpha_forests", params, 4});
  EXPECT_TRUE(same_graph(g.graph, gen_alpha_forests(12, 2, 4).graph));
  EXPECT_EQ(generate({"kary_tree", parse_param_list("k=3,depth=2"), 0}).graph.num_vertices(), 10u);
  auto emb = generate({"disjointness_embedding",
                       parse_param_list("nprime=64,mprime=32,alpha=2,x=3,y=2"), 1});
  EXPECT_EQ(emb.graph.num_edges(), 96u);

  EXPECT_THROW(generate({"nope", {}, 0}), InputError);
  EXPECT_THROW(generate({"path", {}, 0}), InputError);
  EXPECT_THROW(parse_param_list("n"), InputError);
  EXPECT_THROW(parse_param_list("n=abc"), InputError);
}

TEST(Generate, AllSmallFamiliesCertified) {
  std::vector<GeneratedGraph> all;
  for (std::size_t n = 2; n <= 12; ++n) {
    all.push_back(gen_path(n));
    all.push_back(gen_star(n));
    all.push_back(gen_complete(n));
    for (std::uint32_t a = 1; a <= 4; ++a)
      all.push_back(gen_alpha_forests(n, a, n * 10 + a));
  }
  all.push_back(gen_kary_tree(2, 3));
  all.push_back(gen_kary_tree(3, 2));
  for (const auto &g : all)
    expect_certified(g);
}
