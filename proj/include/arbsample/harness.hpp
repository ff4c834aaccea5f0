#pragma once

#include "arbsample/analyzer.hpp"
#include "arbsample/generators.hpp"
#include "arbsample/oracle.hpp"
#include "arbsample/params.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arbsample {

/// Flags a count deviating from N*p by more than this many standard deviations.
inline constexpr double kSigmaThreshold = 5.0;

/// Wilson score interval for k successes in n trials at normal quantile z.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// (count - N p) / sqrt(N p (1 - p)); infinite when p is 0 or 1 and the count
/// disagrees.
double binomial_z(std::uint64_t count, std::uint64_t trials, double p);

struct EdgeObservation {
  OrderedEdge edge;
  std::uint64_t count = 0;
  double probability = 0.0; // exact per-attempt probability
  double z = 0.0;
  bool flagged = false;
  double ratio = 0.0;       // count / successes * 2m
  Interval ratio_interval;  // Wilson bounds scaled by 2m
};

struct SampleReport {
  std::string graph_id;
  SamplerParams params;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint32_t shards = 1;
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  double failure_probability = 0.0;
  double failure_z = 0.0;
  bool failure_flagged = false;
  std::vector<EdgeObservation> edges;
  std::vector<std::uint64_t> walk_length_hits; // successes by drawn walk length
  std::vector<std::uint64_t> attempts_histogram; // bucket b: attempts in [2^b, 2^{b+1})
  QueryCounts queries;
  Certificate certificate;
  std::size_t flagged_edges = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;

  bool passed() const { return flagged_edges == 0 && !failure_flagged && certificate.passed(); }
};

/**
   Runs `trials` independent single attempts of the edge sampler and compares
   the per-edge counts with the analyzer's exact probabilities.

   Trials are split across `shards` independent streams seeded from
   (seed, shard index); shards run on separate threads and the merged report
   depends only on (graph, params, trials, seed, shards).
 */
SampleReport verify(const Graph &g, const SamplerParams &params, std::uint64_t trials,
                    std::uint64_t seed, std::uint32_t shards = 1, std::string graph_id = {},
                    Arithmetic arithmetic = Arithmetic::Auto);

nlohmann::json to_json(const SampleReport &r);
nlohmann::json to_json(const SamplerParams &p);
nlohmann::json to_json(const Certificate &c);

/// JSON document written by `analyze`: params, per-edge probabilities, the
/// layering summary and the certificate.
nlohmann::json analysis_json(const Graph &g, const Analysis &a);

/// One graph in a benchmark.
struct BenchCase {
  GenSpec spec;
  std::optional<std::uint32_t> alpha; // defaults to the declared arboricity
};

struct BenchRow {
  std::string family;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t alpha = 0;
  double eps = 0.0;
  std::uint64_t returned = 0;
  bool exhausted = false;
  double mean_queries = 0.0;
  double mean_attempts = 0.0;
  std::uint64_t total_queries = 0;
  double predicted_bound = 0.0; // rho (2 ell + 3) / ((1 - eps/2) 2m)
  double rejection_mean_queries = 0.0;
  double rejection_mean_attempts = 0.0;
  double tvd_mean_queries = 0.0;
  double tvd_mean_attempts = 0.0;
  bool tvd_exhausted = false;
};

/// rho (2 ell + 3) / ((1 - eps/2) 2m): per-attempt query ceiling over the
/// guaranteed per-attempt success probability.
double predicted_queries_per_edge(const SamplerParams &params, std::size_t m);

/// Measures mean queries per returned edge for the edge sampler and both
/// baselines over `trials` returned edges per graph.
BenchRow bench_graph(const GeneratedGraph &g, std::uint32_t alpha, double eps,
                     std::uint64_t trials, std::uint64_t seed);

std::vector<BenchRow> bench(const std::vector<BenchCase> &cases, double eps, std::uint64_t trials,
                            std::uint64_t seed);

/// Parses {"eps":..,"trials":..,"seed":..,"graphs":[{"family":..,"params":{..},
/// "seed":..,"alpha":..}]}. Missing top-level fields fall back to the
/// supplied defaults.
struct BenchPlan {
  double eps = 0.5;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<BenchCase> cases;
};
BenchPlan parse_bench_plan(const nlohmann::json &doc);

inline constexpr const char *kBenchCsvVersion = "# arbsample-bench v1";
std::string bench_csv(const std::vector<BenchRow> &rows);

struct EdgeCountEstimate {
  std::uint64_t attempts = 0;
  std::uint64_t successes = 0;
  std::optional<double> estimate; // absent with zero successes
  double lower = 0.0;
  double upper = 0.0;
  QueryCounts queries;
};

/// m_hat = (successes / attempts) * rho / 2 with Wilson bounds scaled alike.
template <QueryOracle O>
EdgeCountEstimate estimate_edge_count(O &oracle, const SamplerParams &params,
                                      std::uint64_t attempts);

} // namespace arbsample

#include "arbsample/sampler.hpp"

namespace arbsample {

template <QueryOracle O>
EdgeCountEstimate estimate_edge_count(O &oracle, const SamplerParams &params,
                                      std::uint64_t attempts) {
  if (attempts < 1)
    throw InputError("need at least one attempt");
  EdgeCountEstimate est;
  est.attempts = attempts;
  const QueryCounts before = oracle.counts();
  for (std::uint64_t i = 0; i < attempts; ++i)
    if (sample_edge_once(oracle, params).edge)
      ++est.successes;
  est.queries = oracle.counts() - before;

  const double scale = static_cast<double>(params.rho) / 2.0;
  const Interval ci = wilson_interval(est.successes, attempts);
  est.lower = est.successes == 0 ? 0.0 : ci.lower * scale;
  est.upper = ci.upper * scale;
  if (est.successes > 0)
    est.estimate = static_cast<double>(est.successes) / static_cast<double>(attempts) * scale;
  return est;
}

} // namespace arbsample
