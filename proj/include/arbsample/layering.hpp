#pragma once

#include "arbsample/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

namespace arbsample {

/**
   A (theta, beta)-layered partition L_0, ..., L_depth.

   level[v] == 0 iff d(v) <= theta; a vertex sits at level i + 1 when i is the
   least index with at least a (1 - beta) fraction of its neighbors in
   L_0 ∪ ... ∪ L_i.
 */
struct LayeredPartition {
  std::vector<std::uint32_t> level;
  std::uint32_t depth = 0;
  std::uint64_t theta = 0;
  double beta = 0.0;

  /// |L_i| for i in [0, depth].
  std::vector<std::size_t> layer_sizes() const;

  /// |W_i| = |V \ (L_0 ∪ ... ∪ L_{i-1})| for i in [0, depth + 1].
  std::vector<std::size_t> remaining_sizes() const;
};

/// Returned when some sweep assigns nothing while vertices remain unassigned.
struct NotCovered {
  std::uint32_t levels_built = 0;
  std::size_t unassigned = 0;
};

using LayeringResult = std::variant<LayeredPartition, NotCovered>;

/// Minimum number of neighbors at lower levels for a degree-d vertex:
/// ceil((1 - beta) * d), evaluated exactly for the double beta.
std::size_t required_lower_neighbors(std::size_t d, double beta);

/// Level-synchronous greedy construction; O(sum of degrees + n * depth).
LayeringResult compute_layering(const Graph &g, std::uint64_t theta, double beta);

/// Checks the partition against the definition, including level minimality.
bool is_valid_layering(const Graph &g, const LayeredPartition &p);

/// Exact degeneracy by min-degree peeling.
std::size_t degeneracy(const Graph &g);

/// Largest vertex count accepted by arboricity_bruteforce.
inline constexpr std::size_t kBruteforceMaxVertices = 16;

/// Exact arboricity as the maximum over induced subgraphs H with at least two
/// vertices of ceil(m_H / (n_H - 1)). Throws SizeError for n > 16. Returns 0
/// for an edgeless graph.
std::size_t arboricity_bruteforce(const Graph &g);

} // namespace arbsample
