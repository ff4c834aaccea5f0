#include "arbsample/harness.hpp"

#include "arbsample/errors.hpp"
#include "arbsample/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace arbsample {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0)
    return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double binomial_z(std::uint64_t count, std::uint64_t trials, double p) {
  const double mean = static_cast<double>(trials) * p;
  const double var = mean * (1.0 - p);
  const double diff = static_cast<double>(count) - mean;
  if (var <= 0.0)
    return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  return diff / std::sqrt(var);
}

namespace {

std::uint64_t shard_seed(std::uint64_t seed, std::uint32_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), shard};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

struct ShardTally {
  std::vector<std::uint64_t> counts;
  std::uint64_t failures = 0;
  std::vector<std::uint64_t> walk_hits;
  std::vector<std::uint64_t> gaps;
  QueryCounts queries;
};

std::size_t gap_bucket(std::uint64_t gap) { return static_cast<std::size_t>(std::bit_width(gap) - 1); }

} // namespace

SampleReport verify(const Graph &g, const SamplerParams &params, std::uint64_t trials,
                    std::uint64_t seed, std::uint32_t shards, std::string graph_id,
                    Arithmetic arithmetic) {
  if (shards < 1)
    throw InputError("need at least one shard");
  if (trials < 1)
    throw InputError("need at least one trial");

  SampleReport report;
  report.graph_id = std::move(graph_id);
  report.params = params;
  report.trials = trials;
  report.seed = seed;
  report.shards = shards;

  const Analysis analysis = analyze(g, params, arithmetic);
  report.certificate = analysis.certificate;

  const auto &law = analysis.law;
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(law.edges.size());
  for (std::size_t k = 0; k < law.edges.size(); ++k)
    index[(static_cast<std::uint64_t>(law.edges[k].from) << 32) | law.edges[k].to] = k;

  std::vector<ShardTally> tallies(shards);
  auto run_shard = [&](std::uint32_t s) {
    ShardTally &t = tallies[s];
    t.counts.assign(law.edges.size(), 0);
    t.walk_hits.assign(params.ell + 1, 0);
    const std::uint64_t share = trials / shards + (s < trials % shards ? 1 : 0);
    OracleSession session(g, shard_seed(seed, s));
    std::uint64_t since_last = 0;
    for (std::uint64_t i = 0; i < share; ++i) {
      ++since_last;
      WalkOutcome out = sample_edge_once(session, params);
      if (!out.edge) {
        ++t.failures;
        continue;
      }
      ++t.counts[index.at((static_cast<std::uint64_t>(out.edge->from) << 32) | out.edge->to)];
      ++t.walk_hits[out.walk_length];
      const auto b = gap_bucket(since_last);
      if (t.gaps.size() <= b)
        t.gaps.resize(b + 1, 0);
      ++t.gaps[b];
      since_last = 0;
    }
    t.queries = session.counts();
  };

  if (shards == 1) {
    run_shard(0);
  } else {
    std::vector<std::jthread> workers;
    for (std::uint32_t s = 0; s < shards; ++s)
      workers.emplace_back(run_shard, s);
  }

  std::vector<std::uint64_t> counts(law.edges.size(), 0);
  report.walk_length_hits.assign(params.ell + 1, 0);
  for (const auto &t : tallies) {
    for (std::size_t k = 0; k < counts.size(); ++k)
      counts[k] += t.counts[k];
    for (std::size_t j = 0; j < t.walk_hits.size(); ++j)
      report.walk_length_hits[j] += t.walk_hits[j];
    if (report.attempts_histogram.size() < t.gaps.size())
      report.attempts_histogram.resize(t.gaps.size(), 0);
    for (std::size_t b = 0; b < t.gaps.size(); ++b)
      report.attempts_histogram[b] += t.gaps[b];
    report.failures += t.failures;
    report.queries += t.queries;
  }
  report.successes = trials - report.failures;

  const double success_p = std::clamp(law.total(), 0.0, 1.0);
  report.failure_probability = 1.0 - success_p;
  report.failure_z = binomial_z(report.failures, trials, report.failure_probability);
  report.failure_flagged = std::abs(report.failure_z) > kSigmaThreshold;

  const double ordered = static_cast<double>(law.edges.size());
  bool first = true;
  for (std::size_t k = 0; k < law.edges.size(); ++k) {
    EdgeObservation obs;
    obs.edge = law.edges[k];
    obs.count = counts[k];
    obs.probability = law.prob[k];
    obs.z = binomial_z(obs.count, trials, obs.probability);
    obs.flagged = std::abs(obs.z) > kSigmaThreshold;
    if (report.successes > 0) {
      obs.ratio = static_cast<double>(obs.count) / static_cast<double>(report.successes) * ordered;
      const Interval ci = wilson_interval(obs.count, report.successes);
      obs.ratio_interval = {ci.lower * ordered, ci.upper * ordered};
      report.min_ratio = first ? obs.ratio : std::min(report.min_ratio, obs.ratio);
      report.max_ratio = first ? obs.ratio : std::max(report.max_ratio, obs.ratio);
      first = false;
    }
    if (obs.flagged)
      ++report.flagged_edges;
    report.edges.push_back(obs);
  }
  return report;
}

nlohmann::json to_json(const SamplerParams &p) {
  return {{"n", p.n},         {"alpha", p.alpha}, {"eps", p.eps}, {"theta", p.theta},
          {"beta", p.beta},   {"ell", p.ell},     {"rho", p.rho}};
}

namespace {

nlohmann::json violations_json(const std::vector<Violation> &vs) {
  auto arr = nlohmann::json::array();
  for (const auto &v : vs) {
    nlohmann::json j{{"check", v.check}, {"vertex", v.vertex}, {"value", v.value},
                     {"bound", v.bound}, {"slack", v.slack}};
    if (v.edge)
      j["edge"] = {v.edge->from, v.edge->to};
    arr.push_back(std::move(j));
  }
  return arr;
}

nlohmann::json counts_json(const QueryCounts &q) {
  return {{"degree", q.degree},
          {"neighbor", q.neighbor},
          {"pair", q.pair},
          {"uniform", q.uniform},
          {"total", q.total()}};
}

} // namespace

nlohmann::json to_json(const Certificate &c) {
  return {{"exact", c.exact},
          {"tolerance", c.tolerance},
          {"passed", c.passed()},
          {"upper_bound", {{"passed", c.upper_ok()}, {"violations", violations_json(c.upper_violations)}}},
          {"lower_bound",
           {{"checked", c.lower_checked},
            {"passed", c.lower_ok()},
            {"violations", violations_json(c.lower_violations)}}},
          {"edge_window",
           {{"passed", c.edges_ok()}, {"violations", violations_json(c.edge_violations)}}},
          {"vertices_checked", c.vertices_checked},
          {"edges_checked", c.edges_checked},
          {"success_probability", c.success_probability},
          {"min_edge_probability", c.min_edge_probability},
          {"max_edge_probability", c.max_edge_probability}};
}

nlohmann::json to_json(const SampleReport &r) {
  auto edges = nlohmann::json::array();
  for (const auto &e : r.edges)
    edges.push_back({{"edge", {e.edge.from, e.edge.to}},
                     {"count", e.count},
                     {"probability", e.probability},
                     {"z", std::isfinite(e.z) ? nlohmann::json(e.z) : nlohmann::json(nullptr)},
                     {"flagged", e.flagged},
                     {"ratio", e.ratio},
                     {"ratio_interval", {e.ratio_interval.lower, e.ratio_interval.upper}}});
  return {{"graph", r.graph_id},
          {"params", to_json(r.params)},
          {"trials", r.trials},
          {"seed", r.seed},
          {"shards", r.shards},
          {"successes", r.successes},
          {"failures", r.failures},
          {"failure_probability", r.failure_probability},
          {"failure_z", std::isfinite(r.failure_z) ? nlohmann::json(r.failure_z) : nlohmann::json(nullptr)},
          {"failure_flagged", r.failure_flagged},
          {"flagged_edges", r.flagged_edges},
          {"conditional_ratio", {{"min", r.min_ratio}, {"max", r.max_ratio}}},
          {"walk_length_hits", r.walk_length_hits},
          {"attempts_histogram_log2", r.attempts_histogram},
          {"queries", counts_json(r.queries)},
          {"certificate", to_json(r.certificate)},
          {"edges", std::move(edges)},
          {"passed", r.passed()}};
}

nlohmann::json analysis_json(const Graph &g, const Analysis &a) {
  nlohmann::json layering;
  if (const auto *p = std::get_if<LayeredPartition>(&a.layering)) {
    layering = {{"covered", true},
                {"depth", p->depth},
                {"within_ell", p->depth <= a.params.ell},
                {"layer_sizes", p->layer_sizes()},
                {"remaining_sizes", p->remaining_sizes()}};
  } else {
    const auto &nc = std::get<NotCovered>(a.layering);
    layering = {{"covered", false}, {"levels_built", nc.levels_built}, {"unassigned", nc.unassigned}};
  }

  auto edges = nlohmann::json::array();
  for (std::size_t k = 0; k < a.law.edges.size(); ++k)
    edges.push_back({{"edge", {a.law.edges[k].from, a.law.edges[k].to}}, {"probability", a.law.prob[k]}});

  const double rho = static_cast<double>(a.params.rho);
  return {{"n", g.num_vertices()},
          {"m", g.num_edges()},
          {"params", to_json(a.params)},
          {"arithmetic", a.exact ? "exact" : "double"},
          {"bounds", {{"edge_upper", 1.0 / rho}, {"edge_lower", (1.0 - a.params.eps / 2.0) / rho}}},
          {"success_probability", a.certificate.success_probability},
          {"layering", layering},
          {"certificate", to_json(a.certificate)},
          {"edges", std::move(edges)},
          {"passed", a.certificate.passed()}};
}

double predicted_queries_per_edge(const SamplerParams &params, std::size_t m) {
  if (m == 0)
    return std::numeric_limits<double>::infinity();
  return static_cast<double>(params.rho) * static_cast<double>(max_queries_per_attempt(params.ell)) /
         ((1.0 - params.eps / 2.0) * 2.0 * static_cast<double>(m));
}

BenchRow bench_graph(const GeneratedGraph &gen, std::uint32_t alpha, double eps,
                     std::uint64_t trials, std::uint64_t seed) {
  const Graph &g = gen.graph;
  const SamplerParams params = default_params(g.num_vertices(), alpha, eps);

  BenchRow row;
  row.family = gen.family;
  row.n = g.num_vertices();
  row.m = g.num_edges();
  row.alpha = alpha;
  row.eps = eps;
  row.predicted_bound = predicted_queries_per_edge(params, row.m);

  const std::size_t max_attempts = default_max_attempts(params, std::max<std::size_t>(1, row.m));
  std::uint64_t attempts = 0;
  {
    OracleSession session(g, shard_seed(seed, 0));
    try {
      for (std::uint64_t t = 0; t < trials; ++t) {
        auto s = sample_edge(session, params, max_attempts);
        attempts += s.attempts;
        row.total_queries += s.queries.total();
        ++row.returned;
      }
    } catch (const ExhaustedError &) {
      row.exhausted = true;
    }
  }
  if (row.returned > 0) {
    row.mean_queries = static_cast<double>(row.total_queries) / static_cast<double>(row.returned);
    row.mean_attempts = static_cast<double>(attempts) / static_cast<double>(row.returned);
  }
  if (row.m == 0)
    return row;

  {
    OracleSession session(g, shard_seed(seed, 1));
    const std::uint64_t dmax = g.max_degree();
    const std::size_t cap = 1000 * g.num_vertices() * dmax / (2 * row.m) + 1000;
    std::uint64_t q = 0, a = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      auto s = rejection_baseline(session, dmax, cap);
      q += s.queries.total();
      a += s.attempts;
    }
    row.rejection_mean_queries = static_cast<double>(q) / static_cast<double>(trials);
    row.rejection_mean_attempts = static_cast<double>(a) / static_cast<double>(trials);
  }
  {
    OracleSession session(g, shard_seed(seed, 2));
    const std::size_t cap = 1000 * g.num_vertices() * tvd_degree_cap(eps) / (2 * row.m) + 1000;
    std::uint64_t q = 0, a = 0, got = 0;
    try {
      for (std::uint64_t t = 0; t < trials; ++t) {
        auto s = tvd_baseline(session, eps, cap);
        q += s.queries.total();
        a += s.attempts;
        ++got;
      }
    } catch (const ExhaustedError &) {
      row.tvd_exhausted = true;
    }
    if (got > 0) {
      row.tvd_mean_queries = static_cast<double>(q) / static_cast<double>(got);
      row.tvd_mean_attempts = static_cast<double>(a) / static_cast<double>(got);
    }
  }
  return row;
}

std::vector<BenchRow> bench(const std::vector<BenchCase> &cases, double eps, std::uint64_t trials,
                            std::uint64_t seed) {
  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto gen = generate(cases[i].spec);
    const std::uint32_t alpha = cases[i].alpha.value_or(gen.declared_alpha);
    rows.push_back(bench_graph(gen, alpha, eps, trials, seed + i));
  }
  return rows;
}

BenchPlan parse_bench_plan(const nlohmann::json &doc) {
  BenchPlan plan;
  try {
    plan.eps = doc.value("eps", plan.eps);
    plan.trials = doc.value("trials", plan.trials);
    plan.seed = doc.value("seed", plan.seed);
    for (const auto &item : doc.at("graphs")) {
      BenchCase c;
      c.spec.family = item.at("family").get<std::string>();
      c.spec.seed = item.value("seed", std::uint64_t{0});
      if (item.contains("params"))
        for (const auto &[k, v] : item.at("params").items())
          c.spec.params[k] = v.get<std::int64_t>();
      if (item.contains("alpha"))
        c.alpha = item.at("alpha").get<std::uint32_t>();
      plan.cases.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception &e) {
    throw InputError(std::string("malformed bench plan: ") + e.what());
  }
  return plan;
}

std::string bench_csv(const std::vector<BenchRow> &rows) {
  std::ostringstream out;
  out << kBenchCsvVersion << '\n';
  out << "family,n,m,alpha,eps,returned,exhausted,mean_queries,mean_attempts,total_queries,"
         "predicted_bound,rejection_mean_queries,rejection_mean_attempts,tvd_mean_queries,"
         "tvd_mean_attempts,tvd_exhausted\n";
  out << std::setprecision(10);
  for (const auto &r : rows)
    out << r.family << ',' << r.n << ',' << r.m << ',' << r.alpha << ',' << r.eps << ','
        << r.returned << ',' << (r.exhausted ? 1 : 0) << ',' << r.mean_queries << ','
        << r.mean_attempts << ',' << r.total_queries << ',' << r.predicted_bound << ','
        << r.rejection_mean_queries << ',' << r.rejection_mean_attempts << ','
        << r.tvd_mean_queries << ',' << r.tvd_mean_attempts << ',' << (r.tvd_exhausted ? 1 : 0)
        << '\n';
  return out.str();
}

} // namespace arbsample
