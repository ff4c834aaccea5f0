#include "arbsample/graph.hpp"

#include "arbsample/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace arbsample {

namespace {

std::uint64_t edge_key(Vertex a, Vertex b) {
  if (a > b)
    std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n > std::numeric_limits<Vertex>::max())
    throw SizeError("vertex count exceeds 32-bit id space");

  Graph g;
  g.offsets_.assign(n + 1, 0);
  g.edges_.reserve(edges.size());

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (const Edge &e : edges) {
    if (e.u >= n || e.v >= n)
      throw InputError("edge endpoint out of range: " + std::to_string(e.u) + " " +
                       std::to_string(e.v));
    if (e.u == e.v)
      throw InputError("self-loop at vertex " + std::to_string(e.u));
    if (!seen.insert(edge_key(e.u, e.v)).second)
      throw InputError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    g.edges_.push_back(e);
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  g.targets_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge &e : g.edges_) {
    g.targets_[fill[e.u]++] = e.v;
    g.targets_[fill[e.v]++] = e.u;
  }

  g.sorted_targets_ = g.targets_;
  for (std::size_t v = 0; v < n; ++v)
    std::sort(g.sorted_targets_.begin() + g.offsets_[v],
              g.sorted_targets_.begin() + g.offsets_[v + 1]);
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto first = sorted_targets_.begin() + offsets_[u];
  auto last = sorted_targets_.begin() + offsets_[u + 1];
  return std::binary_search(first, last, v);
}

std::vector<OrderedEdge> Graph::ordered_edges() const {
  std::vector<OrderedEdge> out;
  out.reserve(targets_.size());
  for (Vertex v = 0; v < num_vertices(); ++v)
    for (Vertex w : neighbors(v))
      out.push_back({v, w});
  return out;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < num_vertices(); ++v)
    best = std::max(best, degree(v));
  return best;
}

double Graph::average_degree() const {
  if (num_vertices() == 0)
    return 0.0;
  return 2.0 * static_cast<double>(num_edges()) / static_cast<double>(num_vertices());
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::optional<std::uint64_t> parse_uint(std::string_view tok) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    return std::nullopt;
  return value;
}

} // namespace

Graph parse_edge_list(std::string_view text, std::optional<std::size_t> n_override) {
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  std::optional<std::size_t> declared_n;
  std::size_t inferred_n = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos)
      nl = text.size();
    auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;

    if (line.empty() || line.front() == '#')
      continue;

    if (line.starts_with("n=")) {
      if (declared_n || !edges.empty())
        throw ParseError(line_no, "header \"n=\" must appear once before any edge");
      auto value = parse_uint(trim(line.substr(2)));
      if (!value)
        throw ParseError(line_no, "malformed vertex count header");
      declared_n = static_cast<std::size_t>(*value);
      continue;
    }

    auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos)
      throw ParseError(line_no, "expected two vertex ids");
    auto a = parse_uint(line.substr(0, split));
    auto b = parse_uint(trim(line.substr(split)));
    if (!a || !b)
      throw ParseError(line_no, "expected two non-negative integers");
    if (*a > std::numeric_limits<Vertex>::max() - 1 || *b > std::numeric_limits<Vertex>::max() - 1)
      throw ParseError(line_no, "vertex id too large");
    if (*a == *b)
      throw ParseError(line_no, "self-loop at vertex " + std::to_string(*a));

    Edge e{static_cast<Vertex>(*a), static_cast<Vertex>(*b)};
    if (!seen.insert(edge_key(e.u, e.v)).second)
      throw ParseError(line_no, "duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    inferred_n = std::max<std::size_t>(inferred_n, std::max(e.u, e.v) + std::size_t{1});
    edges.push_back(e);
  }

  std::size_t n = n_override.value_or(declared_n.value_or(inferred_n));
  if (n < inferred_n)
    throw InputError("declared vertex count " + std::to_string(n) +
                     " is smaller than the largest id + 1 (" + std::to_string(inferred_n) + ")");
  return Graph::from_edges(n, edges);
}

Graph load_edge_list(const std::string &path, std::optional<std::size_t> n_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str(), n_override);
}

std::string format_edge_list(const Graph &g) {
  std::ostringstream out;
  out << "n=" << g.num_vertices() << '\n';
  for (const Edge &e : g.edges())
    out << e.u << ' ' << e.v << '\n';
  return out.str();
}

} // namespace arbsample
