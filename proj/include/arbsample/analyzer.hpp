#pragma once

#include "arbsample/graph.hpp"
#include "arbsample/layering.hpp"
#include "arbsample/params.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arbsample {

// Exact evaluation of the walk law. Everything here is templated on the scalar
// (mpq_class for exact rationals, double for large graphs) and explicitly
// instantiated for those two types.

/// P_j[v] for j in [0, ell]: the probability that a walk of length j returns v.
template <typename T> struct WalkDistribution {
  SamplerParams params;
  std::vector<std::vector<T>> table; // table[j][v]

  /// P_{<=ell}[v].
  std::vector<T> cumulative() const;
};

using ExactDistribution = WalkDistribution<mpq_class>;
using FloatDistribution = WalkDistribution<double>;

template <typename T>
WalkDistribution<T> walk_distribution(const Graph &g, const SamplerParams &params);

/// Probability (or weight) per ordered edge, parallel arrays.
template <typename T> struct EdgeLaw {
  std::vector<OrderedEdge> edges;
  std::vector<T> prob;

  T total() const;
  /// Divides by the total. Throws InputError when the total is zero.
  EdgeLaw conditional() const;
};

/// Pr[(v, w)] = P_{<=ell}[v] / ((ell + 1) d(v)) per ordered edge of g.
template <typename T>
EdgeLaw<T> edge_return_probabilities(const Graph &g, const WalkDistribution<T> &dist);

/// Per-attempt law of the rejection baseline: 1/(n dmax) for every ordered edge.
EdgeLaw<mpq_class> rejection_attempt_law(const Graph &g, std::uint64_t dmax);

/// Per-attempt law of the degree-capped baseline: 1/(n cap) when d(from) <= cap.
EdgeLaw<mpq_class> tvd_attempt_law(const Graph &g, double eps);

/// Relative floating-point error bound (ell + 1) * n * DBL_EPSILON for a
/// double-precision distribution; zero for exact ones.
double accumulated_error_bound(const SamplerParams &params, bool exact);

struct Violation {
  std::string check; // "upper", "lower" or "edge"
  Vertex vertex = 0;
  std::optional<OrderedEdge> edge;
  double value = 0.0;
  double bound = 0.0;
  /// value - bound for lower-type limits, bound - value for upper-type ones;
  /// negative means violated.
  double slack = 0.0;
};

struct Certificate {
  bool exact = false;
  double tolerance = 0.0; // relative, doubles only
  bool lower_checked = false;
  std::size_t vertices_checked = 0;
  std::size_t edges_checked = 0;
  std::vector<Violation> upper_violations;
  std::vector<Violation> lower_violations;
  std::vector<Violation> edge_violations;
  double success_probability = 0.0;
  double min_edge_probability = 0.0;
  double max_edge_probability = 0.0;
  double rho = 0.0;

  bool upper_ok() const { return upper_violations.empty(); }
  bool lower_ok() const { return lower_violations.empty(); }
  bool edges_ok() const { return edge_violations.empty(); }
  bool passed() const { return upper_ok() && lower_ok() && edges_ok(); }
};

/**
   Checks the walk law of `g` against the three guarantees:

     P_{<=ell}[v] <= d(v) / (n theta)                     for every v
     P_{<=ell}[v] >= (1 - beta)^level(v) d(v) / (n theta)  for every v
     Pr[(v, w)] in [(1 - eps/2) / rho, 1 / rho]           for every ordered edge

   The lower bound needs a layering built with the same theta and beta and of
   depth at most ell; pass nullptr when none exists and it is skipped. The
   edge window is evaluated regardless and violations are listed, not thrown.
 */
template <typename T>
Certificate certify(const Graph &g, const WalkDistribution<T> &dist,
                    const LayeredPartition *layering);

/// Total variation distance of a normalized law from uniform over its edges.
/// Throws InputError if the law does not sum to 1 within 1e-12.
template <typename T> T tvd_exact(const EdgeLaw<T> &law);

/// (min, max) of law(e) * |edges| over a normalized law.
template <typename T> std::pair<T, T> pointwise_ratio_exact(const EdgeLaw<T> &law);

inline double to_double(const mpq_class &q) { return q.get_d(); }
inline double to_double(double x) { return x; }

} // namespace arbsample

namespace arbsample {

enum class Arithmetic { Auto, Exact, Double };

/// Auto picks exact rationals for graphs with n <= 4096 and at most 2*10^6
/// ordered-edge relaxations, doubles otherwise.
bool use_exact_arithmetic(const Graph &g, const SamplerParams &params, Arithmetic mode);

/// Everything the analyzer knows about one (graph, params) pair.
struct Analysis {
  SamplerParams params;
  bool exact = false;
  LayeringResult layering;
  Certificate certificate;
  EdgeLaw<double> law; // per-attempt probabilities, double view
};

/// Walk law, layering with the same theta/beta, and certificate. The lower
/// bound is only checked when the layering covers V within depth ell.
Analysis analyze(const Graph &g, const SamplerParams &params, Arithmetic mode = Arithmetic::Auto);

} // namespace arbsample
