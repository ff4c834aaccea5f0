#include "arbsample/analyzer.hpp"

#include "arbsample/errors.hpp"
#include "arbsample/sampler.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace arbsample {

namespace {

template <typename T> T ratio(std::uint64_t num, std::uint64_t den) {
  if constexpr (std::is_same_v<T, mpq_class>) {
    mpq_class q{mpz_class{std::to_string(num)}, mpz_class{std::to_string(den)}};
    q.canonicalize();
    return q;
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

template <typename T> T exact_of(double x) {
  if constexpr (std::is_same_v<T, mpq_class>)
    return mpq_class(x);
  else
    return x;
}

template <typename T> T abs_of(const T &x) {
  if constexpr (std::is_same_v<T, mpq_class>)
    return abs(x);
  else
    return std::abs(x);
}

template <typename T> bool is_zero(const T &x) {
  if constexpr (std::is_same_v<T, mpq_class>)
    return sgn(x) == 0;
  else
    return x == 0.0;
}

} // namespace

template <typename T> std::vector<T> WalkDistribution<T>::cumulative() const {
  std::vector<T> sum(params.n, T(0));
  for (const auto &row : table)
    for (std::size_t v = 0; v < row.size(); ++v)
      sum[v] += row[v];
  return sum;
}

template <typename T>
WalkDistribution<T> walk_distribution(const Graph &g, const SamplerParams &params) {
  if (params.n != g.num_vertices())
    throw InputError("params were built for n = " + std::to_string(params.n) +
                     " but the graph has " + std::to_string(g.num_vertices()) + " vertices");
  const std::size_t n = g.num_vertices();
  const std::uint64_t theta = params.theta;

  WalkDistribution<T> dist;
  dist.params = params;
  dist.table.assign(params.ell + 1, std::vector<T>(n, T(0)));

  const std::uint64_t n_theta = static_cast<std::uint64_t>(n) * theta;
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) <= theta)
      dist.table[0][v] = ratio<T>(g.degree(v), n_theta);

  std::vector<T> share(n);
  for (std::uint32_t j = 1; j <= params.ell; ++j) {
    const auto &prev = dist.table[j - 1];
    for (Vertex u = 0; u < n; ++u) {
      if (is_zero(prev[u])) {
        share[u] = T(0);
        continue;
      }
      share[u] = prev[u] / T(static_cast<unsigned long>(g.degree(u)));
    }
    auto &row = dist.table[j];
    for (Vertex v = 0; v < n; ++v) {
      if (g.degree(v) <= theta)
        continue; // stepping into L_0 fails
      T acc(0);
      for (Vertex u : g.neighbors(v))
        if (!is_zero(share[u]))
          acc += share[u];
      row[v] = acc;
    }
  }
  return dist;
}

template <typename T> T EdgeLaw<T>::total() const {
  T sum(0);
  for (const auto &p : prob)
    sum += p;
  return sum;
}

template <typename T> EdgeLaw<T> EdgeLaw<T>::conditional() const {
  const T sum = total();
  if (is_zero(sum))
    throw InputError("cannot condition a law with zero total mass");
  EdgeLaw out{edges, prob};
  for (auto &p : out.prob)
    p /= sum;
  return out;
}

template <typename T>
EdgeLaw<T> edge_return_probabilities(const Graph &g, const WalkDistribution<T> &dist) {
  const auto cumulative = dist.cumulative();
  const T width(static_cast<unsigned long>(dist.params.ell + 1));
  EdgeLaw<T> law;
  law.edges = g.ordered_edges();
  law.prob.reserve(law.edges.size());
  for (const auto &e : law.edges)
    law.prob.push_back(cumulative[e.from] / (width * T(static_cast<unsigned long>(g.degree(e.from)))));
  return law;
}

EdgeLaw<mpq_class> rejection_attempt_law(const Graph &g, std::uint64_t dmax) {
  if (dmax < g.max_degree())
    throw ContractError("dmax is below the maximum degree");
  EdgeLaw<mpq_class> law;
  law.edges = g.ordered_edges();
  law.prob.assign(law.edges.size(), ratio<mpq_class>(1, g.num_vertices() * dmax));
  return law;
}

EdgeLaw<mpq_class> tvd_attempt_law(const Graph &g, double eps) {
  const std::uint64_t cap = tvd_degree_cap(eps);
  EdgeLaw<mpq_class> law;
  law.edges = g.ordered_edges();
  const auto kept = ratio<mpq_class>(1, g.num_vertices() * cap);
  for (const auto &e : law.edges)
    law.prob.push_back(g.degree(e.from) <= cap ? kept : mpq_class(0));
  return law;
}

double accumulated_error_bound(const SamplerParams &params, bool exact) {
  if (exact)
    return 0.0;
  return static_cast<double>(params.ell + 1) * static_cast<double>(params.n) * DBL_EPSILON;
}

template <typename T>
Certificate certify(const Graph &g, const WalkDistribution<T> &dist,
                    const LayeredPartition *layering) {
  const SamplerParams &params = dist.params;
  if (params.n != g.num_vertices())
    throw InputError("distribution and graph disagree on n");
  if (layering) {
    if (layering->theta != params.theta || layering->beta != params.beta)
      throw InputError("layering was built with different theta or beta");
    if (layering->depth > params.ell)
      throw InputError("layering depth " + std::to_string(layering->depth) + " exceeds ell = " +
                       std::to_string(params.ell));
    if (layering->level.size() != g.num_vertices())
      throw InputError("layering does not match the graph");
  }

  constexpr bool kExact = std::is_same_v<T, mpq_class>;
  Certificate cert;
  cert.exact = kExact;
  cert.tolerance = kExact ? 0.0 : 1e-9 + accumulated_error_bound(params, false);
  cert.lower_checked = layering != nullptr;
  cert.rho = static_cast<double>(params.rho);

  // a <= b, with relative slack for doubles.
  auto at_most = [&](const T &a, const T &b) {
    if constexpr (kExact)
      return a <= b;
    else
      return a <= b * (1.0 + cert.tolerance);
  };

  const auto cumulative = dist.cumulative();
  const std::size_t n = g.num_vertices();
  const T n_theta = ratio<T>(static_cast<std::uint64_t>(n) * params.theta, 1);
  const T one_minus_beta = T(1) - exact_of<T>(params.beta);

  for (Vertex v = 0; v < n; ++v) {
    ++cert.vertices_checked;
    const T ceiling = T(static_cast<unsigned long>(g.degree(v))) / n_theta;
    if (!at_most(cumulative[v], ceiling))
      cert.upper_violations.push_back({"upper", v, std::nullopt, to_double(cumulative[v]),
                                       to_double(ceiling), to_double(T(ceiling - cumulative[v]))});
    if (layering) {
      T floor_value = ceiling;
      for (std::uint32_t i = 0; i < layering->level[v]; ++i)
        floor_value *= one_minus_beta;
      if (!at_most(floor_value, cumulative[v]))
        cert.lower_violations.push_back({"lower", v, std::nullopt, to_double(cumulative[v]),
                                         to_double(floor_value),
                                         to_double(T(cumulative[v] - floor_value))});
    }
  }

  const auto law = edge_return_probabilities(g, dist);
  const T hi = ratio<T>(1, params.rho);
  const T lo = (T(1) - exact_of<T>(params.eps) / T(2)) * hi;
  T success(0);
  for (std::size_t k = 0; k < law.edges.size(); ++k) {
    ++cert.edges_checked;
    const T &p = law.prob[k];
    success += p;
    const double pd = to_double(p);
    if (k == 0) {
      cert.min_edge_probability = pd;
      cert.max_edge_probability = pd;
    }
    cert.min_edge_probability = std::min(cert.min_edge_probability, pd);
    cert.max_edge_probability = std::max(cert.max_edge_probability, pd);
    if (!at_most(p, hi))
      cert.edge_violations.push_back(
          {"edge", law.edges[k].from, law.edges[k], pd, to_double(hi), to_double(T(hi - p))});
    else if (!at_most(lo, p))
      cert.edge_violations.push_back(
          {"edge", law.edges[k].from, law.edges[k], pd, to_double(lo), to_double(T(p - lo))});
  }
  cert.success_probability = to_double(success);
  return cert;
}

template <typename T> static void check_normalized(const EdgeLaw<T> &law) {
  if (law.edges.empty() || law.edges.size() != law.prob.size())
    throw InputError("law must assign a probability to at least one ordered edge");
  if (std::abs(to_double(T(law.total() - T(1)))) > 1e-12)
    throw InputError("law is not normalized");
}

template <typename T> T tvd_exact(const EdgeLaw<T> &law) {
  check_normalized(law);
  const T uniform = T(1) / T(static_cast<unsigned long>(law.edges.size()));
  T sum(0);
  for (const auto &p : law.prob)
    sum += abs_of(T(p - uniform));
  return sum / T(2);
}

template <typename T> std::pair<T, T> pointwise_ratio_exact(const EdgeLaw<T> &law) {
  check_normalized(law);
  const T count(static_cast<unsigned long>(law.edges.size()));
  auto [lo, hi] = std::minmax_element(law.prob.begin(), law.prob.end());
  return {T(*lo * count), T(*hi * count)};
}

template struct WalkDistribution<mpq_class>;
template struct WalkDistribution<double>;
template struct EdgeLaw<mpq_class>;
template struct EdgeLaw<double>;
template WalkDistribution<mpq_class> walk_distribution(const Graph &, const SamplerParams &);
template WalkDistribution<double> walk_distribution(const Graph &, const SamplerParams &);
template EdgeLaw<mpq_class> edge_return_probabilities(const Graph &, const WalkDistribution<mpq_class> &);
template EdgeLaw<double> edge_return_probabilities(const Graph &, const WalkDistribution<double> &);
template Certificate certify(const Graph &, const WalkDistribution<mpq_class> &, const LayeredPartition *);
template Certificate certify(const Graph &, const WalkDistribution<double> &, const LayeredPartition *);
template mpq_class tvd_exact(const EdgeLaw<mpq_class> &);
template double tvd_exact(const EdgeLaw<double> &);
template std::pair<mpq_class, mpq_class> pointwise_ratio_exact(const EdgeLaw<mpq_class> &);
template std::pair<double, double> pointwise_ratio_exact(const EdgeLaw<double> &);

} // namespace arbsample

namespace arbsample {

bool use_exact_arithmetic(const Graph &g, const SamplerParams &params, Arithmetic mode) {
  if (mode != Arithmetic::Auto)
    return mode == Arithmetic::Exact;
  const double work = 2.0 * static_cast<double>(g.num_edges()) * (params.ell + 1);
  return g.num_vertices() <= 4096 && work <= 2e6;
}

namespace {

template <typename T>
Analysis analyze_with(const Graph &g, const SamplerParams &params, LayeringResult layering) {
  Analysis out;
  out.params = params;
  out.exact = std::is_same_v<T, mpq_class>;
  const auto dist = walk_distribution<T>(g, params);

  const LayeredPartition *usable = nullptr;
  if (auto *p = std::get_if<LayeredPartition>(&layering); p && p->depth <= params.ell)
    usable = p;
  out.certificate = certify(g, dist, usable);

  auto law = edge_return_probabilities(g, dist);
  out.law.edges = std::move(law.edges);
  out.law.prob.reserve(law.prob.size());
  for (const auto &p : law.prob)
    out.law.prob.push_back(to_double(p));
  out.layering = std::move(layering);
  return out;
}

} // namespace

Analysis analyze(const Graph &g, const SamplerParams &params, Arithmetic mode) {
  LayeringResult layering = NotCovered{};
  if (params.beta > 0.0 && params.beta < 1.0)
    layering = compute_layering(g, params.theta, params.beta);
  if (use_exact_arithmetic(g, params, mode))
    return analyze_with<mpq_class>(g, params, std::move(layering));
  return analyze_with<double>(g, params, std::move(layering));
}

} // namespace arbsample
