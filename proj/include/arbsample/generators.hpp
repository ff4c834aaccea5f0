#pragma once

#include "arbsample/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arbsample {

/// Depth bookkeeping for the complete tree family.
struct TreeInfo {
  std::uint32_t branching = 0; // k
  std::uint32_t depth = 0;     // D
  std::uint32_t critical_depth = 0; // L
  std::size_t critical = 0;    // depth <= L
  std::size_t shallow = 0;     // depth <= 2L
  std::size_t deep = 0;        // depth > 2L
  std::vector<std::uint32_t> vertex_depth;
};

/// Block structure W_0, W_1, ..., W_N of the set-disjointness instance.
struct EmbeddingInfo {
  std::size_t n_prime = 0;
  std::size_t m_prime = 0;
  std::uint32_t alpha = 0;
  std::size_t blocks = 0;     // N
  std::size_t block_size = 0; // |W_i| for i >= 1
  std::size_t intersections = 0;
  std::vector<std::uint32_t> block; // block index per vertex, 0 for W_0
};

/**
   A generated graph plus what is known about it by construction.

   `declared_alpha` is an upper bound on the arboricity. When `forests` is
   non-empty it partitions the edge set into `forests.size()` acyclic parts and
   serves as an explicit certificate; otherwise the bound is closed-form.
 */
struct GeneratedGraph {
  Graph graph;
  std::string family;
  std::uint32_t declared_alpha = 0;
  std::vector<std::vector<Edge>> forests;
  std::optional<TreeInfo> tree;
  std::optional<EmbeddingInfo> embedding;
};

/// Family name plus integer parameters, as accepted by `gen --params`.
struct GenSpec {
  std::string family;
  std::map<std::string, std::int64_t> params;
  std::uint64_t seed = 0;
};

/// Parses "k=v,k=v" into an integer map. Throws InputError on bad syntax.
std::map<std::string, std::int64_t> parse_param_list(const std::string &text);

/// Dispatches on spec.family. Families and their parameters:
///   path n | star n | complete n | kary_tree k depth [L]
///   alpha_forests n alpha [m] | alpha_regular n alpha
///   matching_plus_regular n alpha | disjointness_embedding nprime mprime alpha x y
/// where x and y are bit masks (bit i-1 is coordinate i).
GeneratedGraph generate(const GenSpec &spec);

GeneratedGraph gen_path(std::size_t n);
GeneratedGraph gen_star(std::size_t n); // center 0
GeneratedGraph gen_complete(std::size_t n);

/// Root with k children, every other internal vertex with k - 1, leaves at
/// depth D. Vertices numbered in BFS order. Throws SizeError beyond 10^7
/// vertices.
GeneratedGraph gen_kary_tree(std::uint32_t k, std::uint32_t depth,
                             std::uint32_t critical_depth = 1);

/// Union of alpha random spanning trees with duplicates dropped. With
/// `target_edges`, edges are taken round-robin from the trees until that many
/// distinct edges are present, so each forest holds about target/alpha edges.
GeneratedGraph gen_alpha_forests(std::size_t n, std::uint32_t alpha, std::uint64_t seed,
                                 std::optional<std::size_t> target_edges = {});

/// alpha-regular graph on n vertices from alpha/2 random Hamiltonian cycles
/// (plus a perfect matching for odd alpha), retried on collisions and falling
/// back to a circulant graph.
GeneratedGraph gen_alpha_regular(std::size_t n, std::uint32_t alpha, std::uint64_t seed);

/// Perfect matching on the first n - n/alpha vertices and an alpha-regular
/// graph on the last n/alpha.
GeneratedGraph gen_matching_plus_regular(std::size_t n, std::uint32_t alpha,
                                         std::uint64_t seed = 0);

/// W_0 holds a graph H with n' vertices, m' edges and arboricity <= alpha;
/// each W_i (i = 1..N, N = n' alpha / 2m') has 2m'/alpha vertices and carries a
/// copy of K, a 2alpha-regular graph with 2m' edges, exactly when
/// x_i = y_i = 1.
GeneratedGraph gen_disjointness_embedding(std::size_t n_prime, std::size_t m_prime,
                                          std::uint32_t alpha, const std::vector<bool> &x,
                                          const std::vector<bool> &y, std::uint64_t seed = 0);

/// True when `forests` partitions the edges of g and every part is acyclic.
bool is_forest_decomposition(const Graph &g, const std::vector<std::vector<Edge>> &forests);

} // namespace arbsample
