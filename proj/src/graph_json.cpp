#include "rcm/graph_json.hpp"

namespace rcm {

nlohmann::ordered_json graph_to_json(const PlanarGraph& g) {
  nlohmann::ordered_json out;
  out["spec"] = {{"d", g.spec.degree}, {"codegree", g.spec.codegree}, {"depth", g.spec.depth}};
  auto& vertices = out["vertices"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    vertices.push_back({{"id", i}, {"ring", g.vertices[i].ring}});
  }
  auto& edges = out["edges"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges[i];
    nlohmann::ordered_json dual = nullptr;
    if (e.dual) dual = *e.dual;
    edges.push_back({{"id", i}, {"u", e.u}, {"v", e.v}, {"dual", dual}});
  }
  auto& faces = out["faces"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.num_faces(); ++i) {
    faces.push_back({{"id", i}, {"cycle", g.faces[i].cycle}, {"complete", g.faces[i].complete}});
  }
  return out;
}

}  // namespace rcm
