#include "rcm/tessellation.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "rcm/errors.hpp"

namespace rcm {

Geometry classify(int degree, int codegree) {
  if (degree < 3 || codegree < 3) {
    throw DegenerateSpec("degree and codegree must both be at least 3, got {" +
                         std::to_string(degree) + "," + std::to_string(codegree) + "}");
  }
  const int product = (degree - 2) * (codegree - 2);
  if (product < 4) {
    throw SphericalSpec("(d-2)(codegree-2) = " + std::to_string(product) +
                        " < 4 for {" + std::to_string(degree) + "," +
                        std::to_string(codegree) + "}");
  }
  return product == 4 ? Geometry::euclidean : Geometry::hyperbolic;
}

std::size_t PlanarGraph::num_complete_faces() const {
  return static_cast<std::size_t>(
      std::count_if(faces.begin(), faces.end(), [](const Face& f) { return f.complete; }));
}

std::optional<int> PlanarGraph::edge_between(int u, int v) const {
  for (int e : rotation[u]) {
    if (other_end(e, u) == v) return e;
  }
  return std::nullopt;
}

std::vector<int> PlanarGraph::neighbors(int v) const {
  std::vector<int> out;
  out.reserve(rotation[v].size());
  for (int e : rotation[v]) out.push_back(other_end(e, v));
  return out;
}

std::vector<int> PlanarGraph::interior_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(num_vertices()); ++v) {
    if (interior[v]) out.push_back(v);
  }
  return out;
}

std::vector<int> PlanarGraph::frontier_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(num_vertices()); ++v) {
    if (!interior[v]) out.push_back(v);
  }
  return out;
}

namespace {

std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (hi << 32) | lo;
}

// Fills left/right faces, rotation, corner faces and interior flags from the
// vertex, edge and face lists. Every dart must belong to exactly one face.
void finalize(PlanarGraph& g) {
  const int n = static_cast<int>(g.num_vertices());
  const int m = static_cast<int>(g.num_edges());
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(static_cast<std::size_t>(m) * 2);
  for (int e = 0; e < m; ++e) {
    g.edges[e].left_face = -1;
    g.edges[e].right_face = -1;
    index.emplace(edge_key(g.edges[e].u, g.edges[e].v), e);
  }
  auto dart = [&](int a, int b) {
    auto it = index.find(edge_key(a, b));
    if (it == index.end()) throw std::logic_error("face uses a missing edge");
    return 2 * it->second + (g.edges[it->second].u == a ? 0 : 1);
  };

  // prev_in_face[d] for dart d = (b -> c) is the vertex a with a -> b -> c in
  // the face containing d; a is the counter-clockwise successor of c around b.
  std::vector<int> prev_in_face(2 * static_cast<std::size_t>(m), -1);
  std::vector<int> dart_face(2 * static_cast<std::size_t>(m), -1);
  for (int f = 0; f < static_cast<int>(g.num_faces()); ++f) {
    const auto& c = g.faces[f].cycle;
    const int k = static_cast<int>(c.size());
    for (int i = 0; i < k; ++i) {
      const int a = c[(i + k - 1) % k];
      const int b = c[i];
      const int cc = c[(i + 1) % k];
      const int d = dart(b, cc);
      if (dart_face[d] != -1) throw std::logic_error("dart covered by two faces");
      dart_face[d] = f;
      prev_in_face[d] = a;
      auto& edge = g.edges[d / 2];
      (d % 2 == 0 ? edge.left_face : edge.right_face) = f;
    }
  }

  std::vector<std::vector<int>> incident(n);
  for (int e = 0; e < m; ++e) {
    incident[g.edges[e].u].push_back(e);
    incident[g.edges[e].v].push_back(e);
  }

  g.rotation.assign(n, {});
  g.corner_faces.assign(n, {});
  g.interior.assign(n, false);
  for (int v = 0; v < n; ++v) {
    if (incident[v].empty()) continue;
    const int deg = static_cast<int>(incident[v].size());
    std::vector<int> rot;
    std::vector<int> corners;
    rot.reserve(deg);
    corners.reserve(deg);
    int e = *std::min_element(incident[v].begin(), incident[v].end());
    for (int step = 0; step < deg; ++step) {
      const int w = g.other_end(e, v);
      const int d = dart(v, w);
      if (dart_face[d] == -1) throw std::logic_error("dart without face");
      rot.push_back(e);
      corners.push_back(dart_face[d]);
      e = index.at(edge_key(v, prev_in_face[d]));
    }
    if (e != rot.front()) throw std::logic_error("rotation is not a single cycle");
    // Frontier fans start right after the outer corner.
    auto outer = std::find_if(corners.begin(), corners.end(),
                              [&](int f) { return !g.faces[f].complete; });
    bool closed = outer == corners.end();
    if (!closed) {
      const auto shift = (outer - corners.begin() + 1) % deg;
      std::rotate(rot.begin(), rot.begin() + shift, rot.end());
      std::rotate(corners.begin(), corners.begin() + shift, corners.end());
    }
    g.interior[v] = closed && deg == g.spec.degree;
    g.rotation[v] = std::move(rot);
    g.corner_faces[v] = std::move(corners);
  }
  g.face_dual_vertex.assign(g.num_faces(), std::nullopt);
  g.vertex_dual_face.assign(n, std::nullopt);
}

// Ring-by-ring construction. The current patch is always a topological disk
// whose boundary is kept as a doubly linked cycle, traversed with the patch
// on the left.
class Builder {
 public:
  explicit Builder(const TessellationSpec& spec) : spec_(spec) {}

  PlanarGraph run() {
    seed();
    for (int ring = 1; ring <= spec_.depth; ++ring) {
      ring_ = ring;
      std::vector<int> snapshot = boundary_cycle();
      for (int v : snapshot) {
        if (on_boundary_[v]) complete(v);
      }
    }
    return finish();
  }

  // Completes vertices in order of their distance from vertex 0 until every
  // vertex within `radius` is interior.
  PlanarGraph run_ball(int radius) {
    seed();
    for (int layer = 0; layer <= radius; ++layer) {
      ring_ = layer + 1;
      const auto dist = distances_from_seed();
      std::vector<int> snapshot = boundary_cycle();
      for (int v : snapshot) {
        if (on_boundary_[v] && dist[v] == layer) complete(v);
      }
    }
    return finish();
  }

 private:
  std::vector<int> distances_from_seed() const {
    std::vector<std::vector<int>> adjacency(ring_of_.size());
    for (auto [a, b] : edges_) {
      adjacency[a].push_back(b);
      adjacency[b].push_back(a);
    }
    std::vector<int> dist(ring_of_.size(), -1);
    std::deque<int> queue{0};
    dist[0] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : adjacency[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return dist;
  }

  int new_vertex() {
    ring_of_.push_back(ring_);
    edge_count_.push_back(0);
    face_count_.push_back(0);
    next_.push_back(-1);
    prev_.push_back(-1);
    on_boundary_.push_back(true);
    return static_cast<int>(ring_of_.size()) - 1;
  }

  void add_edge(int a, int b) {
    if (!edge_ids_.emplace(edge_key(a, b), static_cast<int>(edges_.size())).second) {
      throw std::logic_error("tessellation construction produced a double edge");
    }
    edges_.push_back({a, b});
    ++edge_count_[a];
    ++edge_count_[b];
  }

  void seed() {
    const int k = spec_.codegree;
    std::vector<int> cycle;
    for (int i = 0; i < k; ++i) cycle.push_back(new_vertex());
    for (int i = 0; i < k; ++i) {
      add_edge(cycle[i], cycle[(i + 1) % k]);
      next_[cycle[i]] = cycle[(i + 1) % k];
      prev_[cycle[(i + 1) % k]] = cycle[i];
      ++face_count_[cycle[i]];
    }
    faces_.push_back(cycle);
    face_ring_.push_back(0);
  }

  bool saturated(int v) const { return edge_count_[v] == spec_.degree; }

  // Adds the faces missing around boundary vertex v, one at a time, each
  // attached beyond the boundary edge v -> next(v).
  void complete(int v) {
    while (on_boundary_[v]) {
      std::deque<int> path{v, next_[v]};
      while (saturated(path.front())) {
        path.push_front(prev_[path.front()]);
        guard(path);
      }
      while (saturated(path.back())) {
        path.push_back(next_[path.back()]);
        guard(path);
      }
      add_face(std::vector<int>(path.begin(), path.end()));
    }
  }

  void guard(const std::deque<int>& path) const {
    if (static_cast<int>(path.size()) > spec_.codegree) {
      throw std::logic_error("boundary path longer than a face");
    }
  }

  // New face outside the boundary path x0 -> ... -> xm.
  void add_face(const std::vector<int>& path) {
    const int m = static_cast<int>(path.size()) - 1;
    const int fresh = spec_.codegree - m - 1;
    if (fresh < 0 || path.front() == path.back()) {
      throw std::logic_error("boundary closed up during construction");
    }
    std::vector<int> cycle(path.rbegin(), path.rend());
    std::vector<int> chain{path.front()};
    for (int i = 0; i < fresh; ++i) chain.push_back(new_vertex());
    chain.push_back(path.back());
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) add_edge(chain[i], chain[i + 1]);
    for (int i = 1; i <= fresh; ++i) cycle.push_back(chain[i]);
    for (int x : cycle) ++face_count_[x];

    for (int i = 1; i < m; ++i) {
      const int x = path[i];
      on_boundary_[x] = false;
      if (face_count_[x] != spec_.degree || edge_count_[x] != spec_.degree) {
        throw std::logic_error("vertex closed with wrong degree");
      }
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      next_[chain[i]] = chain[i + 1];
      prev_[chain[i + 1]] = chain[i];
    }
    faces_.push_back(std::move(cycle));
    face_ring_.push_back(ring_);
  }

  std::vector<int> boundary_cycle() const {
    int start = -1;
    for (int v = 0; v < static_cast<int>(on_boundary_.size()); ++v) {
      if (on_boundary_[v]) {
        start = v;
        break;
      }
    }
    std::vector<int> out;
    if (start < 0) return out;
    int v = start;
    do {
      out.push_back(v);
      v = next_[v];
    } while (v != start);
    return out;
  }

  PlanarGraph finish() {
    PlanarGraph g;
    g.spec = spec_;
    g.vertices.reserve(ring_of_.size());
    for (int r : ring_of_) g.vertices.push_back({r});
    g.edges.reserve(edges_.size());
    for (auto [a, b] : edges_) g.edges.push_back({a, b, std::nullopt, -1, -1});
    g.faces.reserve(faces_.size() + 1);
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      g.faces.push_back({std::move(faces_[f]), true, face_ring_[f]});
    }
    std::vector<int> outer = boundary_cycle();
    std::reverse(outer.begin(), outer.end());
    g.faces.push_back({std::move(outer), false, spec_.depth + 1});
    finalize(g);
    return g;
  }

  TessellationSpec spec_;
  int ring_ = 0;
  std::vector<int> ring_of_, edge_count_, face_count_, next_, prev_;
  std::vector<bool> on_boundary_;
  std::vector<std::pair<int, int>> edges_;
  std::unordered_map<std::uint64_t, int> edge_ids_;
  std::vector<std::vector<int>> faces_;
  std::vector<int> face_ring_;
};

}  // namespace

PlanarGraph build_tessellation(const TessellationSpec& spec) {
  classify(spec.degree, spec.codegree);
  if (spec.depth < 0) throw DegenerateSpec("depth must be nonnegative");
  return Builder(spec).run();
}

PlanarGraph build_ball_patch(int degree, int codegree, int radius) {
  classify(degree, codegree);
  if (radius < 0) throw DegenerateSpec("radius must be nonnegative");
  return Builder({degree, codegree, radius}).run_ball(radius);
}

PlanarGraph dual_graph(const PlanarGraph& g) {
  std::vector<int> dual_vertex(g.num_faces(), -1);
  PlanarGraph d;
  d.spec = {g.spec.codegree, g.spec.degree, g.spec.depth};
  std::vector<int> source_face;
  for (int f = 0; f < static_cast<int>(g.num_faces()); ++f) {
    if (!g.faces[f].complete) continue;
    dual_vertex[f] = static_cast<int>(d.vertices.size());
    d.vertices.push_back({g.faces[f].ring});
    source_face.push_back(f);
  }
  if (d.vertices.empty()) throw NoFaces("graph has no complete face");

  std::vector<int> dual_edge(g.num_edges(), -1);
  std::vector<int> source_edge;
  for (int e = 0; e < static_cast<int>(g.num_edges()); ++e) {
    const auto& edge = g.edges[e];
    if (edge.left_face < 0 || edge.right_face < 0) continue;
    const int a = dual_vertex[edge.left_face];
    const int b = dual_vertex[edge.right_face];
    if (a < 0 || b < 0) continue;
    dual_edge[e] = static_cast<int>(d.edges.size());
    d.edges.push_back({a, b, e, -1, -1});
    source_edge.push_back(e);
  }

  // Bounded dual faces: closed fans around vertices of g.
  std::vector<int> source_vertex;
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    const auto& corners = g.corner_faces[v];
    if (corners.empty()) continue;
    const bool closed = std::all_of(corners.begin(), corners.end(),
                                    [&](int f) { return g.faces[f].complete; });
    if (!closed) continue;
    Face face;
    face.ring = g.vertices[v].ring;
    for (int f : corners) face.cycle.push_back(dual_vertex[f]);
    d.faces.push_back(std::move(face));
    source_vertex.push_back(v);
  }

  // Outer walk(s): trace the darts not covered by a bounded face using the
  // rotation induced by each primal face's cycle order.
  const int dn = static_cast<int>(d.vertices.size());
  const int dm = static_cast<int>(d.edges.size());
  std::vector<std::vector<int>> rot(dn);
  for (int dv = 0; dv < dn; ++dv) {
    const auto& c = g.faces[source_face[dv]].cycle;
    const int k = static_cast<int>(c.size());
    for (int i = 0; i < k; ++i) {
      auto e = g.edge_between(c[i], c[(i + 1) % k]);
      if (e && dual_edge[*e] >= 0) rot[dv].push_back(dual_edge[*e]);
    }
  }
  auto other = [&](int e, int v) { return d.edges[e].u == v ? d.edges[e].v : d.edges[e].u; };
  auto dart_of = [&](int e, int from) { return 2 * e + (d.edges[e].u == from ? 0 : 1); };
  std::vector<bool> covered(2 * static_cast<std::size_t>(dm), false);
  for (const auto& face : d.faces) {
    const int k = static_cast<int>(face.cycle.size());
    for (int i = 0; i < k; ++i) {
      const int a = face.cycle[i];
      const int b = face.cycle[(i + 1) % k];
      for (int e : rot[a]) {
        if (other(e, a) == b) covered[dart_of(e, a)] = true;
      }
    }
  }
  for (int start = 0; start < 2 * dm; ++start) {
    if (covered[start]) continue;
    Face outer;
    outer.complete = false;
    outer.ring = g.spec.depth + 1;
    int dart = start;
    do {
      covered[dart] = true;
      const int e = dart / 2;
      const int from = dart % 2 == 0 ? d.edges[e].u : d.edges[e].v;
      const int to = other(e, from);
      outer.cycle.push_back(from);
      // Next edge is the clockwise neighbour of e around `to`.
      const auto& r = rot[to];
      const auto pos = std::find(r.begin(), r.end(), e) - r.begin();
      const int k = static_cast<int>(r.size());
      const int next_edge = r[(pos + k - 1) % k];
      dart = dart_of(next_edge, to);
    } while (dart != start);
    d.faces.push_back(std::move(outer));
  }

  finalize(d);
  for (int f = 0; f < static_cast<int>(source_vertex.size()); ++f) {
    d.face_dual_vertex[f] = source_vertex[f];
  }
  for (int dv = 0; dv < dn; ++dv) d.vertex_dual_face[dv] = source_face[dv];
  return d;
}

DualPair make_dual_pair(PlanarGraph g) {
  PlanarGraph d = dual_graph(g);
  for (int dv = 0; dv < static_cast<int>(d.num_vertices()); ++dv) {
    g.face_dual_vertex[*d.vertex_dual_face[dv]] = dv;
  }
  for (int f = 0; f < static_cast<int>(d.num_faces()); ++f) {
    if (d.face_dual_vertex[f]) g.vertex_dual_face[*d.face_dual_vertex[f]] = f;
  }
  for (int e = 0; e < static_cast<int>(d.num_edges()); ++e) {
    g.edges[*d.edges[e].dual].dual = e;
  }
  return {std::move(g), std::move(d)};
}

Patch patch_edge_sets(const PlanarGraph& g, std::span<const int> vertex_set) {
  Patch patch;
  patch.vertices.assign(vertex_set.begin(), vertex_set.end());
  std::sort(patch.vertices.begin(), patch.vertices.end());
  patch.vertices.erase(std::unique(patch.vertices.begin(), patch.vertices.end()),
                       patch.vertices.end());
  std::vector<bool> member(g.num_vertices(), false);
  for (int v : patch.vertices) {
    if (v < 0 || v >= static_cast<int>(g.num_vertices())) {
      throw FrontierVertex("vertex " + std::to_string(v) + " is not in the patch");
    }
    if (!g.interior[v]) {
      throw FrontierVertex("vertex " + std::to_string(v) + " lies on the frontier");
    }
    member[v] = true;
  }
  for (int v : patch.vertices) {
    for (int e : g.rotation[v]) {
      const int w = g.other_end(e, v);
      if (!member[w]) {
        patch.star_edges.push_back(e);
        patch.boundary_edges.push_back(e);
      } else if (v < w) {
        patch.star_edges.push_back(e);
        patch.internal_edges.push_back(e);
      }
    }
  }
  std::sort(patch.internal_edges.begin(), patch.internal_edges.end());
  std::sort(patch.star_edges.begin(), patch.star_edges.end());
  std::sort(patch.boundary_edges.begin(), patch.boundary_edges.end());
  return patch;
}

namespace {

// BFS distances, exploring only from vertices closer than `limit`.
std::vector<int> distances_within(const PlanarGraph& g, int origin, int limit) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::queue<int> queue;
  dist[origin] = 0;
  queue.push(origin);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    if (dist[v] >= limit) continue;
    for (int e : g.rotation[v]) {
      const int w = g.other_end(e, v);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

}  // namespace

Patch ball(const PlanarGraph& g, int origin, int radius) {
  if (radius < 0) throw DomainError("radius must be nonnegative");
  const auto dist = distances_within(g, origin, radius);
  std::vector<int> members;
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (dist[v] < 0) continue;
    if (!g.interior[v]) {
      throw TruncatedBall("ball of radius " + std::to_string(radius) +
                          " reaches frontier vertex " + std::to_string(v));
    }
    members.push_back(v);
  }
  return patch_edge_sets(g, members);
}

std::vector<std::int64_t> growth_sequence(const PlanarGraph& g, int origin, int max_radius) {
  if (max_radius < 0) throw DomainError("radius must be nonnegative");
  const auto dist = distances_within(g, origin, max_radius);
  std::vector<std::int64_t> spheres(static_cast<std::size_t>(max_radius) + 1, 0);
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (dist[v] < 0) continue;
    if (dist[v] < max_radius && !g.interior[v]) {
      throw TruncatedBall("sphere " + std::to_string(dist[v] + 1) +
                          " is cut by the patch frontier");
    }
    ++spheres[dist[v]];
  }
  return spheres;
}

std::vector<int> prime(const DualPair& pair, Side side, std::span<const int> vertex_set) {
  const PlanarGraph& g = graph_of(pair, side);
  std::vector<int> out;
  for (int v : vertex_set) {
    if (!g.interior[v]) {
      throw FrontierContact("vertex " + std::to_string(v) + " is not surrounded by complete faces");
    }
    for (int f : g.corner_faces[v]) out.push_back(*g.face_dual_vertex[f]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> hat(const DualPair& pair, Side side, std::span<const int> vertex_set) {
  const PlanarGraph& g = graph_of(pair, side);
  const PlanarGraph& other = graph_of(pair, opposite(side));
  const auto boundary = prime(pair, side, vertex_set);
  std::vector<bool> in_boundary(other.num_vertices(), false);
  for (int x : boundary) in_boundary[x] = true;

  // Flood the unbounded region: start at every frontier vertex of g and
  // cross g-edges whose dual edge is not in E(K').
  std::vector<bool> outside(g.num_vertices(), false);
  std::queue<int> queue;
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (!g.interior[v]) {
      outside[v] = true;
      queue.push(v);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int e : g.rotation[v]) {
      const auto& de = g.edges[e].dual;
      if (de && in_boundary[other.edges[*de].u] && in_boundary[other.edges[*de].v]) continue;
      const int w = g.other_end(e, v);
      if (!outside[w]) {
        outside[w] = true;
        queue.push(w);
      }
    }
  }
  std::vector<int> enclosed;
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (!outside[v]) enclosed.push_back(v);
  }
  return enclosed;
}

int central_vertex(const PlanarGraph& g) {
  if (g.num_vertices() == 0 || !g.interior[0]) {
    throw TruncatedBall("patch has no interior seed vertex; increase depth");
  }
  return 0;
}

}  // namespace rcm
