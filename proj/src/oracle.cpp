#include "arbsample/oracle.hpp"

#include "arbsample/errors.hpp"

#include <string>

namespace arbsample {

void OracleSession::check_vertex(Vertex v) const {
  if (v >= graph_->num_vertices())
    throw InputError("vertex id " + std::to_string(v) + " out of range [0, " +
                     std::to_string(graph_->num_vertices()) + ")");
}

std::size_t OracleSession::degree(Vertex v) {
  check_vertex(v);
  ++counts_.degree;
  return graph_->degree(v);
}

std::optional<Vertex> OracleSession::neighbor(Vertex v, std::size_t i) {
  check_vertex(v);
  if (i == 0)
    throw InputError("neighbor index is 1-based");
  ++counts_.neighbor;
  auto nbrs = graph_->neighbors(v);
  if (i > nbrs.size())
    return std::nullopt;
  return nbrs[i - 1];
}

bool OracleSession::pair(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v)
    throw InputError("pair query needs two distinct vertices");
  ++counts_.pair;
  return graph_->has_edge(u, v);
}

Vertex OracleSession::uniform_vertex() {
  if (graph_->num_vertices() == 0)
    throw InputError("uniform vertex draw on an empty vertex set");
  ++counts_.uniform;
  return static_cast<Vertex>(draw_below(graph_->num_vertices()));
}

} // namespace arbsample
