#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rcm {

/// {d, codegree} tessellation request. `degree` is the number of edges at
/// every vertex and `codegree` the number of sides of every face.
struct TessellationSpec {
  int degree = 0;
  int codegree = 0;
  int depth = 0;

  bool operator==(const TessellationSpec&) const = default;
};

enum class Geometry { euclidean, hyperbolic };

/// Classifies (d, d̂) by the sign of (d-2)(d̂-2) - 4.
/// Throws DegenerateSpec if d < 3 or d̂ < 3 and SphericalSpec if the
/// product is below 4.
Geometry classify(int degree, int codegree);

struct Vertex {
  int ring = 0;
};

struct Edge {
  int u = 0;
  int v = 0;
  std::optional<int> dual;  // edge id in the dual graph, if built
  int left_face = -1;       // face containing the dart u -> v
  int right_face = -1;      // face containing the dart v -> u
};

struct Face {
  std::vector<int> cycle;  // counter-clockwise vertex ids
  bool complete = true;
  int ring = 0;
};

/// Finite planar patch with a counter-clockwise rotation system. The last
/// face is the outer face (complete == false). Graphs are immutable once
/// built; every accessor is const.
class PlanarGraph {
 public:
  TessellationSpec spec;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;

  /// Incident edge ids in counter-clockwise order. For frontier vertices the
  /// fan starts right after the outer face.
  std::vector<std::vector<int>> rotation;
  /// Face following each rotation slot: corner_faces[v][i] lies between
  /// rotation[v][i] and rotation[v][i + 1].
  std::vector<std::vector<int>> corner_faces;
  /// True when every face around v is complete and deg(v) == spec.degree.
  std::vector<bool> interior;

  /// Cross references, filled by make_dual_pair.
  std::vector<std::optional<int>> face_dual_vertex;
  std::vector<std::optional<int>> vertex_dual_face;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_edges() const { return edges.size(); }
  std::size_t num_faces() const { return faces.size(); }
  std::size_t num_complete_faces() const;

  int degree(int v) const { return static_cast<int>(rotation[v].size()); }
  int other_end(int edge, int v) const {
    return edges[edge].u == v ? edges[edge].v : edges[edge].u;
  }
  std::optional<int> edge_between(int u, int v) const;
  std::vector<int> neighbors(int v) const;
  bool is_interior(int v) const { return interior[v]; }
  std::vector<int> interior_vertices() const;
  std::vector<int> frontier_vertices() const;
};

/// Builds `depth` face rings around a seed face. Ring k consists of every
/// face sharing a vertex with ring k - 1. Vertex ids follow creation order.
PlanarGraph build_tessellation(const TessellationSpec& spec);

/// Patch grown around vertex 0 by completing vertices in order of graph
/// distance, so that the closed ball B_radius(0) is interior. Face rings
/// grow much faster than balls in hyperbolic tilings; use this when a ball
/// of given radius is needed. spec.depth records the radius.
PlanarGraph build_ball_patch(int degree, int codegree, int radius);

/// Planar dual restricted to complete faces. Dual vertex i is the i-th
/// complete face of g; dual edges follow g's edge order; dual faces are the
/// interior vertices of g in id order, followed by the outer face.
/// Throws NoFaces if g has no complete face.
PlanarGraph dual_graph(const PlanarGraph& g);

/// A graph and its dual with edge, face and vertex cross references filled
/// in on both sides.
struct DualPair {
  PlanarGraph primal;
  PlanarGraph dual;
};

DualPair make_dual_pair(PlanarGraph g);

/// Which graph of a DualPair a vertex set refers to.
enum class Side { primal, dual };

inline Side opposite(Side s) { return s == Side::primal ? Side::dual : Side::primal; }
inline const PlanarGraph& graph_of(const DualPair& pair, Side s) {
  return s == Side::primal ? pair.primal : pair.dual;
}

/// Finite vertex set with its derived edge sets (sorted edge ids).
struct Patch {
  std::vector<int> vertices;        // sorted
  std::vector<int> internal_edges;  // E(K)
  std::vector<int> star_edges;      // E*(K)
  std::vector<int> boundary_edges;  // ∂_E K

  std::size_t size() const { return vertices.size(); }
};

/// E(K), E*(K) and ∂_E K. Throws FrontierVertex if K contains a non-interior
/// vertex (its degree would be truncated).
Patch patch_edge_sets(const PlanarGraph& g, std::span<const int> vertex_set);

/// Graph-metric ball of radius r about o. Throws TruncatedBall if the ball
/// reaches a frontier vertex.
Patch ball(const PlanarGraph& g, int origin, int radius);

/// |B_n \ B_{n-1}| for n = 0..max_radius. Requires B_{max_radius - 1} to be
/// interior, otherwise TruncatedBall.
std::vector<std::int64_t> growth_sequence(const PlanarGraph& g, int origin, int max_radius);

/// K is a vertex set of graph `side`, regarded as faces of the other graph.
/// Returns the vertices of the other graph bounding those faces (K').
/// Throws FrontierContact if some element of K is not interior.
std::vector<int> prime(const DualPair& pair, Side side, std::span<const int> vertex_set);

/// Hole-filled closure: all vertices of graph `side` (faces of the other
/// graph) enclosed by the outermost cycle of E(K'). Result ⊇ K.
std::vector<int> hat(const DualPair& pair, Side side, std::span<const int> vertex_set);

/// Vertex at the seed face that is interior and deepest inside the patch.
int central_vertex(const PlanarGraph& g);

}  // namespace rcm
