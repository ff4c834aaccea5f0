// Command-line front end: gen, layering, sample, analyze, verify, bench, estimate-m.

#include "arbsample/analyzer.hpp"
#include "arbsample/errors.hpp"
#include "arbsample/generators.hpp"
#include "arbsample/harness.hpp"
#include "arbsample/layering.hpp"
#include "arbsample/sampler.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace arbsample;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct GraphArgs {
  std::string path;
  std::optional<std::size_t> n;

  Graph load() const { return load_edge_list(path, n); }
};

void add_graph_args(CLI::App *cmd, GraphArgs &args) {
  cmd->add_option("graph", args.path, "edge-list file")->required();
  cmd->add_option("--n", args.n, "vertex count override (adds isolated vertices)");
}

void write_text(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InputError("cannot write " + path);
  out << text;
}

Arithmetic parse_arith(const std::string &s) {
  if (s == "exact")
    return Arithmetic::Exact;
  if (s == "double")
    return Arithmetic::Double;
  return Arithmetic::Auto;
}

nlohmann::json meta_json(const GeneratedGraph &gen, const GenSpec &spec) {
  nlohmann::json meta{{"family", gen.family},
                      {"n", gen.graph.num_vertices()},
                      {"m", gen.graph.num_edges()},
                      {"declared_alpha", gen.declared_alpha},
                      {"seed", spec.seed},
                      {"params", spec.params}};
  if (!gen.forests.empty()) {
    auto forests = nlohmann::json::array();
    for (const auto &f : gen.forests) {
      auto arr = nlohmann::json::array();
      for (const auto &e : f)
        arr.push_back({e.u, e.v});
      forests.push_back(std::move(arr));
    }
    meta["forest_certificate"] = std::move(forests);
  }
  if (gen.tree) {
    const auto &t = *gen.tree;
    meta["tree"] = {{"k", t.branching},      {"depth", t.depth},   {"L", t.critical_depth},
                    {"n_c", t.critical},     {"n_s", t.shallow},   {"n_d", t.deep},
                    {"vertex_depth", t.vertex_depth}};
  }
  if (gen.embedding) {
    const auto &e = *gen.embedding;
    meta["embedding"] = {{"n_prime", e.n_prime},   {"m_prime", e.m_prime},
                         {"alpha", e.alpha},       {"N", e.blocks},
                         {"block_size", e.block_size}, {"intersections", e.intersections},
                         {"block", e.block}};
  }
  return meta;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Almost-uniform edge sampling for bounded-arboricity graphs"};
  app.require_subcommand(1);

  // gen
  GenSpec gen_spec;
  std::string gen_params, gen_out;
  auto *gen = app.add_subcommand("gen", "generate a graph family");
  gen->add_option("--family", gen_spec.family, "path|star|complete|kary_tree|alpha_forests|"
                                               "alpha_regular|matching_plus_regular|"
                                               "disjointness_embedding")
      ->required();
  gen->add_option("--params", gen_params, "comma separated k=v integer parameters");
  gen->add_option("--seed", gen_spec.seed, "generator seed");
  gen->add_option("--out", gen_out, "edge-list output path")->required();

  // layering
  GraphArgs lay_graph;
  std::uint64_t lay_theta = 0;
  double lay_beta = 0.0, lay_eps = 0.0;
  std::uint32_t lay_alpha = 0;
  bool lay_auto = false;
  auto *lay = app.add_subcommand("layering", "compute the (theta, beta)-layered partition");
  add_graph_args(lay, lay_graph);
  lay->add_option("--theta", lay_theta);
  lay->add_option("--beta", lay_beta);
  lay->add_flag("--auto", lay_auto, "derive theta and beta from --alpha and --eps");
  lay->add_option("--alpha", lay_alpha);
  lay->add_option("--eps", lay_eps);

  // sample
  GraphArgs smp_graph;
  std::uint32_t smp_alpha = 1;
  double smp_eps = 0.5;
  std::uint64_t smp_seed = 1, smp_count = 1;
  std::string smp_algo = "paper";
  auto *smp = app.add_subcommand("sample", "draw edges");
  add_graph_args(smp, smp_graph);
  smp->add_option("--alpha", smp_alpha)->required();
  smp->add_option("--eps", smp_eps)->required();
  smp->add_option("--seed", smp_seed);
  smp->add_option("--count", smp_count);
  smp->add_option("--algo", smp_algo)->check(CLI::IsMember({"paper", "rejection", "tvd"}));

  // analyze
  GraphArgs ana_graph;
  std::uint32_t ana_alpha = 1;
  double ana_eps = 0.5;
  std::string ana_out, ana_arith = "auto";
  auto *ana = app.add_subcommand("analyze", "exact walk law and certificate");
  add_graph_args(ana, ana_graph);
  ana->add_option("--alpha", ana_alpha)->required();
  ana->add_option("--eps", ana_eps)->required();
  ana->add_option("--out", ana_out, "JSON report path (stdout if omitted)");
  ana->add_option("--arith", ana_arith)->check(CLI::IsMember({"auto", "exact", "double"}));

  // verify
  GraphArgs ver_graph;
  std::uint32_t ver_alpha = 1, ver_shards = 1;
  double ver_eps = 0.5;
  std::uint64_t ver_trials = 1'000'000, ver_seed = 1;
  std::string ver_out, ver_arith = "auto";
  auto *ver = app.add_subcommand("verify", "Monte-Carlo check against the exact law");
  add_graph_args(ver, ver_graph);
  ver->add_option("--alpha", ver_alpha)->required();
  ver->add_option("--eps", ver_eps)->required();
  ver->add_option("--trials", ver_trials);
  ver->add_option("--seed", ver_seed);
  ver->add_option("--shards", ver_shards);
  ver->add_option("--out", ver_out);
  ver->add_option("--arith", ver_arith)->check(CLI::IsMember({"auto", "exact", "double"}));

  // bench
  std::string bench_spec, bench_out;
  auto *bch = app.add_subcommand("bench", "query-complexity benchmark");
  bch->add_option("--spec", bench_spec, "bench plan JSON")->required();
  bch->add_option("--out", bench_out, "CSV output path (stdout if omitted)");

  // estimate-m
  GraphArgs est_graph;
  std::uint32_t est_alpha = 1;
  double est_eps = 0.5;
  std::uint64_t est_attempts = 100'000, est_seed = 1;
  auto *est = app.add_subcommand("estimate-m", "estimate the edge count from the success rate");
  add_graph_args(est, est_graph);
  est->add_option("--alpha", est_alpha)->required();
  est->add_option("--eps", est_eps)->required();
  est->add_option("--attempts", est_attempts);
  est->add_option("--seed", est_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*gen) {
      gen_spec.params = parse_param_list(gen_params);
      const auto g = generate(gen_spec);
      write_text(gen_out, format_edge_list(g.graph));
      write_text(gen_out + ".meta.json", meta_json(g, gen_spec).dump(2) + "\n");
      return kExitOk;
    }

    if (*lay) {
      const Graph g = lay_graph.load();
      std::uint64_t theta = lay_theta;
      double beta = lay_beta;
      if (lay_auto) {
        const auto p = default_params(g.num_vertices(), lay_alpha, lay_eps);
        theta = p.theta;
        beta = p.beta;
      }
      const auto result = compute_layering(g, theta, beta);
      if (const auto *nc = std::get_if<NotCovered>(&result)) {
        std::cout << "not covered: levels_built=" << nc->levels_built
                  << " unassigned=" << nc->unassigned << '\n';
        return kExitViolation;
      }
      const auto &p = std::get<LayeredPartition>(result);
      for (Vertex v = 0; v < g.num_vertices(); ++v)
        std::cout << v << ' ' << p.level[v] << '\n';
      std::cout << "depth=" << p.depth << '\n';
      return kExitOk;
    }

    if (*smp) {
      const Graph g = smp_graph.load();
      const auto params = default_params(g.num_vertices(), smp_alpha, smp_eps);
      OracleSession session(g, smp_seed);
      const std::size_t max_attempts = default_max_attempts(params);
      for (std::uint64_t i = 0; i < smp_count; ++i) {
        SampledEdge s;
        if (smp_algo == "paper")
          s = sample_edge(session, params, max_attempts);
        else if (smp_algo == "rejection")
          s = rejection_baseline(session, g.max_degree(), max_attempts);
        else
          s = tvd_baseline(session, smp_eps, max_attempts);
        std::cout << s.edge.from << ' ' << s.edge.to << ' ' << s.attempts << ' '
                  << s.queries.total() << '\n';
      }
      return kExitOk;
    }

    if (*ana) {
      const Graph g = ana_graph.load();
      const auto params = default_params(g.num_vertices(), ana_alpha, ana_eps);
      const auto analysis = analyze(g, params, parse_arith(ana_arith));
      write_text(ana_out, analysis_json(g, analysis).dump(2) + "\n");
      return analysis.certificate.passed() ? kExitOk : kExitViolation;
    }

    if (*ver) {
      const Graph g = ver_graph.load();
      const auto params = default_params(g.num_vertices(), ver_alpha, ver_eps);
      const auto report = verify(g, params, ver_trials, ver_seed, ver_shards, ver_graph.path,
                                 parse_arith(ver_arith));
      write_text(ver_out, to_json(report).dump(2) + "\n");
      return report.passed() ? kExitOk : kExitViolation;
    }

    if (*bch) {
      std::ifstream in(bench_spec);
      if (!in)
        throw InputError("cannot open " + bench_spec);
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("bench plan is not valid JSON: ") + e.what());
      }
      const auto plan = parse_bench_plan(doc);
      const auto rows = bench(plan.cases, plan.eps, plan.trials, plan.seed);
      write_text(bench_out, bench_csv(rows));
      for (const auto &r : rows)
        if (r.exhausted)
          return kExitViolation;
      return kExitOk;
    }

    if (*est) {
      const Graph g = est_graph.load();
      const auto params = default_params(g.num_vertices(), est_alpha, est_eps);
      OracleSession session(g, est_seed);
      const auto e = estimate_edge_count(session, params, est_attempts);
      nlohmann::json out{{"attempts", e.attempts},
                         {"successes", e.successes},
                         {"estimate", e.estimate ? nlohmann::json(*e.estimate) : nlohmann::json(nullptr)},
                         {"interval", {e.lower, e.upper}},
                         {"rho", params.rho},
                         {"queries", e.queries.total()}};
      std::cout << out.dump(2) << '\n';
      return kExitOk;
    }
  } catch (const ExhaustedError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  } catch (const ContractError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
