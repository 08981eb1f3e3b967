#include "rcm/rc_simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_map>

#include "rcm/errors.hpp"

namespace rcm {

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::free:
      return "free";
    case BoundaryKind::wired:
      return "wired";
    case BoundaryKind::weakened:
      return "weakened";
    case BoundaryKind::apex:
      return "apex";
  }
  return "free";
}

BoundaryKind parse_boundary_kind(const std::string& text) {
  if (text == "free") return BoundaryKind::free;
  if (text == "wired") return BoundaryKind::wired;
  if (text == "weakened") return BoundaryKind::weakened;
  if (text == "apex") return BoundaryKind::apex;
  throw DomainError("unknown boundary condition '" + text + "'");
}

namespace {

void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
  }
}

}  // namespace

RCInstance make_instance(int num_vertices, std::vector<std::pair<int, int>> edges,
                         std::vector<int> boundary, BoundaryCondition bc, std::vector<double> p,
                         double q) {
  if (num_vertices < 1) throw DomainError("instance needs at least one vertex");
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("q must be finite and at least 1");
  if (p.size() != edges.size()) throw DomainError("one probability per edge expected");
  for (double x : p) check_probability(x, "p");
  if (bc.kind == BoundaryKind::weakened || bc.kind == BoundaryKind::apex) check_probability(bc.s, "s");

  RCInstance inst;
  inst.num_vertices = num_vertices;
  inst.q = q;
  inst.bc = bc;
  inst.bulk_p = p.empty() ? 0.0 : p.front();
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
  for (int v : boundary) {
    if (v < 0 || v >= num_vertices) throw DomainError("boundary vertex out of range");
  }
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices) {
      throw DomainError("edge endpoint out of range");
    }
  }
  inst.boundary = std::move(boundary);
  inst.is_boundary.assign(num_vertices, false);
  for (int v : inst.boundary) inst.is_boundary[v] = true;

  if (bc.kind == BoundaryKind::weakened) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (inst.is_boundary[edges[e].first] || inst.is_boundary[edges[e].second]) p[e] = bc.s;
    }
  }
  if (bc.kind == BoundaryKind::apex) {
    const int v0 = num_vertices;
    for (int v = 0; v < num_vertices; ++v) {
      edges.emplace_back(v0, v);
      p.push_back(bc.s);
    }
    inst.apex = v0;
    inst.num_vertices = num_vertices + 1;
    inst.is_boundary.push_back(false);
  }
  inst.edges = std::move(edges);
  inst.p = std::move(p);
  inst.adjacency.assign(inst.num_vertices, {});
  for (int e = 0; e < inst.num_edges(); ++e) {
    const auto [u, v] = inst.edges[e];
    inst.adjacency[u].emplace_back(v, e);
    if (u != v) inst.adjacency[v].emplace_back(u, e);
  }
  return inst;
}

RCInstance make_instance(int num_vertices, std::vector<std::pair<int, int>> edges,
                         std::vector<int> boundary, BoundaryCondition bc, double p, double q) {
  std::vector<double> probs(edges.size(), p);
  RCInstance inst = make_instance(num_vertices, std::move(edges), std::move(boundary), bc,
                                  std::move(probs), q);
  inst.bulk_p = p;
  return inst;
}

RCInstance triangle_instance(BoundaryCondition bc, double p, double q, std::vector<int> boundary) {
  return make_instance(3, {{0, 1}, {1, 2}, {0, 2}}, std::move(boundary), bc, p, q);
}

RCInstance path_instance(int n, BoundaryCondition bc, double p, double q) {
  if (n < 2) throw DomainError("path needs at least two vertices");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return make_instance(n, std::move(edges), {0, n - 1}, bc, p, q);
}

RCInstance ball_instance(const PlanarGraph& g, int origin, int radius, BoundaryCondition bc,
                         double p, double q) {
  const Patch outer = ball(g, origin, radius);
  std::vector<bool> inner(g.num_vertices(), false);
  if (radius > 0) {
    for (int v : ball(g, origin, radius - 1).vertices) inner[v] = true;
  }
  std::vector<int> index(g.num_vertices(), -1);
  index[origin] = 0;
  int next = 1;
  for (int v : outer.vertices) {
    if (v != origin) index[v] = next++;
  }
  std::vector<std::pair<int, int>> edges;
  for (int e : outer.internal_edges) edges.emplace_back(index[g.edges[e].u], index[g.edges[e].v]);
  std::vector<int> boundary;
  for (int v : outer.vertices) {
    if (!inner[v]) boundary.push_back(index[v]);
  }
  return make_instance(next, std::move(edges), std::move(boundary), bc, p, q);
}

EdgeConfig::EdgeConfig(const RCInstance& instance, bool all_open)
    : instance_(&instance), bits_(instance.num_edges(), all_open ? 1 : 0) {}

void EdgeConfig::set(int e, bool open) {
  const std::uint8_t bit = open ? 1 : 0;
  if (bits_[e] == bit) return;
  bits_[e] = bit;
  if (!valid_) return;
  if (open) {
    const int a = find(instance_->edges[e].first);
    const int b = find(instance_->edges[e].second);
    if (a != b) {
      parent_[a] = b;
      --sets_;
    }
  } else {
    valid_ = false;
  }
}

int EdgeConfig::open_count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

int EdgeConfig::find(int x) const {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

namespace {

bool uses_super_node(const RCInstance& inst) {
  return inst.wired_counting() && !inst.boundary.empty();
}

}  // namespace

void EdgeConfig::rebuild() const {
  const RCInstance& inst = *instance_;
  const bool super = uses_super_node(inst);
  const int nodes = inst.num_vertices + (super ? 1 : 0);
  parent_.resize(nodes);
  for (int i = 0; i < nodes; ++i) parent_[i] = i;
  sets_ = nodes;
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[a] = b;
      --sets_;
    }
  };
  if (super) {
    for (int v : inst.boundary) unite(v, inst.num_vertices);
  }
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (bits_[e]) unite(inst.edges[e].first, inst.edges[e].second);
  }
  valid_ = true;
}

int EdgeConfig::components() const {
  if (!valid_) rebuild();
  return uses_super_node(*instance_) ? sets_ - 1 : sets_;
}

int EdgeConfig::recount() const {
  EdgeConfig fresh(*instance_);
  fresh.bits_ = bits_;
  return fresh.components();
}

bool EdgeConfig::connected(int u, int v) const {
  if (!valid_) rebuild();
  return find(u) == find(v);
}

bool EdgeConfig::connected_off(int e) const {
  const auto [u, v] = instance_->edges[e];
  if (u == v) return true;
  if (!bits_[e]) return connected(u, v);
  const RCInstance& inst = *instance_;
  const bool super = uses_super_node(inst);
  std::vector<std::uint8_t> seen(inst.num_vertices, 0);
  std::vector<int> stack{u};
  seen[u] = 1;
  bool boundary_done = false;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    if (x == v) return true;
    if (super && inst.is_boundary[x] && !boundary_done) {
      boundary_done = true;
      for (int b : inst.boundary) {
        if (!seen[b]) {
          seen[b] = 1;
          stack.push_back(b);
        }
      }
    }
    for (auto [y, f] : inst.adjacency[x]) {
      if (f == e || !bits_[f] || seen[y]) continue;
      seen[y] = 1;
      stack.push_back(y);
    }
  }
  return false;
}

bool EdgeConfig::below(const EdgeConfig& other) const {
  for (std::size_t e = 0; e < bits_.size(); ++e) {
    if (bits_[e] > other.bits_[e]) return false;
  }
  return true;
}

bool connects_to_boundary(const EdgeConfig& config, int origin) {
  const RCInstance& inst = config.instance();
  if (origin < 0 || origin >= inst.num_vertices || (inst.apex && origin == *inst.apex)) {
    throw DomainError("origin must be a vertex of the instance");
  }
  std::vector<std::uint8_t> seen(inst.num_vertices, 0);
  std::vector<int> stack{origin};
  seen[origin] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    if (inst.is_boundary[x]) return true;
    for (auto [y, f] : inst.adjacency[x]) {
      if (!config.open(f) || seen[y] || (inst.apex && y == *inst.apex)) continue;
      seen[y] = 1;
      stack.push_back(y);
    }
  }
  return false;
}

namespace {

// Union-find over a fixed node count, reset per configuration.
struct SmallUnionFind {
  explicit SmallUnionFind(int n) : parent(n) {}
  void reset(int n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
    sets = n;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      --sets;
    }
  }
  std::vector<int> parent;
  int sets = 0;
};

// Evaluates κ (or κ*) and the connectivity event for one bitmask.
class MaskEvaluator {
 public:
  MaskEvaluator(const RCInstance& inst, std::optional<int> origin)
      : inst_(inst), origin_(origin), super_(uses_super_node(inst)),
        nodes_(inst.num_vertices + (super_ ? 1 : 0)), count_(nodes_), event_(inst.num_vertices) {
    if (origin && (*origin < 0 || *origin >= inst.num_vertices ||
                   (inst.apex && *origin == *inst.apex))) {
      throw DomainError("origin must be a vertex of the instance");
    }
  }

  int kappa(std::uint32_t mask) {
    count_.reset(nodes_);
    if (super_) {
      for (int v : inst_.boundary) count_.unite(v, inst_.num_vertices);
    }
    for (int e = 0; e < inst_.num_edges(); ++e) {
      if (mask >> e & 1U) count_.unite(inst_.edges[e].first, inst_.edges[e].second);
    }
    return super_ ? count_.sets - 1 : count_.sets;
  }

  // Call after kappa(mask).
  bool event(std::uint32_t mask) {
    if (!origin_) return false;
    SmallUnionFind* uf = &count_;
    if (inst_.apex) {
      event_.reset(inst_.num_vertices);
      for (int e = 0; e < inst_.num_edges(); ++e) {
        const auto [u, v] = inst_.edges[e];
        if ((mask >> e & 1U) && u != *inst_.apex && v != *inst_.apex) event_.unite(u, v);
      }
      uf = &event_;
    }
    const int root = uf->find(*origin_);
    for (int b : inst_.boundary) {
      if (uf->find(b) == root) return true;
    }
    return false;
  }

 private:
  const RCInstance& inst_;
  std::optional<int> origin_;
  bool super_;
  int nodes_;
  SmallUnionFind count_;
  SmallUnionFind event_;
};

// Distinct edge probabilities, in order of first appearance.
struct EdgeClasses {
  explicit EdgeClasses(const RCInstance& inst) {
    for (double x : inst.p) {
      auto it = std::find(values.begin(), values.end(), x);
      if (it == values.end()) {
        of_edge.push_back(static_cast<int>(values.size()));
        values.push_back(x);
        sizes.push_back(1);
      } else {
        const int c = static_cast<int>(it - values.begin());
        of_edge.push_back(c);
        ++sizes[c];
      }
    }
  }
  std::vector<double> values;
  std::vector<int> sizes;
  std::vector<int> of_edge;
};

Rational pow_rational(const Rational& base, int exponent) {
  Rational out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

// Weight p^{open}(1-p)^{closed} q^κ for a configuration summary.
class WeightTable {
 public:
  WeightTable(const EdgeClasses& classes, double q, int max_kappa) : classes_(classes) {
    for (std::size_t c = 0; c < classes.values.size(); ++c) {
      const Rational p(classes.values[c]);
      const Rational r = Rational(1) - p;
      std::vector<Rational> row;
      for (int k = 0; k <= classes.sizes[c]; ++k) {
        row.push_back(pow_rational(p, k) * pow_rational(r, classes.sizes[c] - k));
      }
      bernoulli_.push_back(std::move(row));
    }
    const Rational qr(q);
    Rational acc = 1;
    for (int k = 0; k <= max_kappa; ++k) {
      q_powers_.push_back(acc);
      acc *= qr;
    }
  }

  Rational weight(std::span<const int> open_per_class, int kappa) const {
    Rational w = q_powers_[kappa];
    for (std::size_t c = 0; c < open_per_class.size(); ++c) w *= bernoulli_[c][open_per_class[c]];
    return w;
  }

 private:
  const EdgeClasses& classes_;
  std::vector<std::vector<Rational>> bernoulli_;
  std::vector<Rational> q_powers_;
};

constexpr int kFieldBits = 6;
constexpr int kMaxClasses = 8;

}  // namespace

ExactResult exact_rc(const RCInstance& inst, std::optional<int> origin) {
  const int m = inst.num_edges();
  if (m > kExactEdgeCap) {
    throw BudgetExceeded(std::to_string(m) + " edges exceed the enumeration cap of " +
                         std::to_string(kExactEdgeCap));
  }
  const EdgeClasses classes(inst);
  if (static_cast<int>(classes.values.size()) > kMaxClasses) {
    throw DomainError("at most 8 distinct edge probabilities are supported");
  }
  MaskEvaluator eval(inst, origin);

  struct Group {
    std::uint64_t count = 0;
    std::uint64_t event = 0;
    std::vector<std::uint64_t> open;
  };
  std::unordered_map<std::uint64_t, Group> groups;
  const std::uint32_t total = std::uint32_t{1} << m;
  std::vector<int> per_class(classes.values.size());
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::fill(per_class.begin(), per_class.end(), 0);
    for (int e = 0; e < m; ++e) {
      if (mask >> e & 1U) ++per_class[classes.of_edge[e]];
    }
    const int kappa = eval.kappa(mask);
    std::uint64_t key = static_cast<std::uint64_t>(kappa);
    for (int c : per_class) key = key << kFieldBits | static_cast<std::uint64_t>(c);
    Group& g = groups[key];
    if (g.open.empty()) g.open.assign(m, 0);
    ++g.count;
    if (eval.event(mask)) ++g.event;
    for (int e = 0; e < m; ++e) {
      if (mask >> e & 1U) ++g.open[e];
    }
  }

  // Sum in key order so the arithmetic is reproducible.
  std::map<std::uint64_t, const Group*> ordered;
  for (const auto& [key, g] : groups) ordered.emplace(key, &g);

  const WeightTable table(classes, inst.q, inst.num_vertices + 1);
  Rational z = 0;
  Rational event = 0;
  std::vector<Rational> open(m, Rational(0));
  const int nc = static_cast<int>(classes.values.size());
  for (const auto& [key, g] : ordered) {
    std::vector<int> counts(nc);
    std::uint64_t k = key;
    for (int c = nc - 1; c >= 0; --c) {
      counts[c] = static_cast<int>(k & ((1U << kFieldBits) - 1));
      k >>= kFieldBits;
    }
    const Rational w = table.weight(counts, static_cast<int>(k));
    z += w * g->count;
    event += w * g->event;
    for (int e = 0; e < m; ++e) open[e] += w * g->open[e];
  }

  ExactResult out;
  out.configurations = total;
  for (int e = 0; e < m; ++e) out.edge_marginals.push_back(open[e] / z);
  if (origin) out.connectivity = event / z;
  out.total = z / z;
  return out;
}

std::vector<Rational> exact_distribution(const RCInstance& inst) {
  const int m = inst.num_edges();
  if (m > 20) throw BudgetExceeded("exact_distribution is capped at 20 edges");
  const EdgeClasses classes(inst);
  const WeightTable table(classes, inst.q, inst.num_vertices + 1);
  MaskEvaluator eval(inst, std::nullopt);
  const std::uint32_t total = std::uint32_t{1} << m;
  std::vector<Rational> probs(total);
  std::vector<int> per_class(classes.values.size());
  Rational z = 0;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::fill(per_class.begin(), per_class.end(), 0);
    for (int e = 0; e < m; ++e) {
      if (mask >> e & 1U) ++per_class[classes.of_edge[e]];
    }
    probs[mask] = table.weight(per_class, eval.kappa(mask));
    z += probs[mask];
  }
  for (auto& x : probs) x /= z;
  return probs;
}

double heat_bath_probability(const EdgeConfig& config, int edge) {
  const RCInstance& inst = config.instance();
  const double p = inst.p[edge];
  if (inst.q == 1.0 || config.connected_off(edge)) return p;
  return p / (p + (1.0 - p) * inst.q);
}

void heat_bath_step(EdgeConfig& config, int edge, double u) {
  config.set(edge, u < heat_bath_probability(config, edge));
}

std::vector<double> sweep_uniforms(std::uint64_t seed, std::uint64_t draw, std::uint64_t t,
                                   int num_edges) {
  auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };
  auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(draw), hi(draw), lo(t), hi(t)};
  std::mt19937_64 engine(seq);
  std::vector<double> out(num_edges);
  for (auto& u : out) u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  return out;
}

namespace {

constexpr std::uint64_t kCachedSweeps = 4096;

}  // namespace

EdgeConfig sample_exact(const RCInstance& inst, std::uint64_t seed, std::uint64_t draw,
                        const SamplerOptions& options) {
  if (!(inst.q >= 1.0)) throw DomainError("exact sampling needs q >= 1");
  const int m = inst.num_edges();
  std::vector<std::vector<double>> cache;
  auto uniforms = [&](std::uint64_t t) -> std::vector<double> {
    if (t > kCachedSweeps) return sweep_uniforms(seed, draw, t, m);
    while (cache.size() < t) cache.push_back(sweep_uniforms(seed, draw, cache.size() + 1, m));
    return cache[t - 1];
  };

  for (int k = 0; k <= options.max_doublings; ++k) {
    const std::uint64_t horizon = std::uint64_t{1} << k;
    EdgeConfig lower(inst, false);
    EdgeConfig upper(inst, true);
    for (std::uint64_t t = horizon; t >= 1; --t) {
      const auto u = uniforms(t);
      for (int e = 0; e < m; ++e) {
        heat_bath_step(lower, e, u[e]);
        heat_bath_step(upper, e, u[e]);
        assert(lower.below(upper));
      }
    }
    if (lower == upper) return lower;
  }
  throw NoCoalescence("no coalescence within 2^" + std::to_string(options.max_doublings) +
                      " sweeps (draw " + std::to_string(draw) + ")");
}

EdgeConfig bernoulli_draw(const RCInstance& inst, std::uint64_t seed, std::uint64_t draw) {
  const auto u = sweep_uniforms(seed, draw, 1, inst.num_edges());
  EdgeConfig config(inst);
  for (int e = 0; e < inst.num_edges(); ++e) config.set(e, u[e] < inst.p[e]);
  return config;
}

Estimate wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) throw DomainError("no samples");
  if (successes > n) throw DomainError("more successes than samples");
  Estimate out;
  out.n = n;
  out.successes = successes;
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z / (1 + z2 / nn) * std::sqrt(phat * (1 - phat) / nn + z2 / (4 * nn * nn));
  out.estimate = phat;
  out.ci_lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  out.ci_hi = successes == n ? 1.0 : std::min(1.0, centre + half);
  return out;
}

namespace {

bool deterministic(const RCInstance& inst) {
  return std::all_of(inst.p.begin(), inst.p.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

template <typename Event>
Estimate run_draws(const RCInstance& inst, std::uint64_t n_samples, std::uint64_t seed,
                   unsigned threads, const SamplerOptions& options, Event event) {
  if (n_samples == 0) throw DomainError("n_samples must be positive");
  if (deterministic(inst)) {
    EdgeConfig config(inst);
    for (int e = 0; e < inst.num_edges(); ++e) config.set(e, inst.p[e] == 1.0);
    const bool hit = event(config);
    Estimate out;
    out.estimate = out.ci_lo = out.ci_hi = hit ? 1.0 : 0.0;
    out.n = n_samples;
    out.seed = seed;
    out.successes = hit ? n_samples : 0;
    out.exact = true;
    return out;
  }
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_samples));

  std::atomic<std::uint64_t> hits{0};
  std::mutex error_lock;
  std::exception_ptr error;
  std::uint64_t error_draw = n_samples;
  auto worker = [&](unsigned w) {
    std::uint64_t local = 0;
    for (std::uint64_t i = w; i < n_samples; i += threads) {
      try {
        if (event(sample_exact(inst, seed, i, options))) ++local;
      } catch (...) {
        std::lock_guard lock(error_lock);
        if (i < error_draw) {
          error_draw = i;
          error = std::current_exception();
        }
        return;
      }
    }
    hits += local;
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  Estimate out = wilson_interval(hits.load(), n_samples);
  out.seed = seed;
  return out;
}

}  // namespace

Estimate estimate_connectivity(const RCInstance& inst, int origin, std::uint64_t n_samples,
                               std::uint64_t seed, unsigned threads,
                               const SamplerOptions& options) {
  if (origin < 0 || origin >= inst.num_vertices || (inst.apex && origin == *inst.apex)) {
    throw DomainError("origin must be a vertex of the instance");
  }
  return run_draws(inst, n_samples, seed, threads, options,
                   [origin](const EdgeConfig& c) { return connects_to_boundary(c, origin); });
}

Estimate estimate_edge(const RCInstance& inst, int edge, std::uint64_t n_samples,
                       std::uint64_t seed, unsigned threads, const SamplerOptions& options) {
  if (edge < 0 || edge >= inst.num_edges()) throw DomainError("edge out of range");
  return run_draws(inst, n_samples, seed, threads, options,
                   [edge](const EdgeConfig& c) { return c.open(edge); });
}

PottsColoring potts_coloring(const EdgeConfig& config, int q, int r, std::uint64_t seed) {
  if (q < 2) throw DomainError("Potts coloring needs an integer q >= 2");
  if (r < 1 || r > q) throw BadSpin("spin " + std::to_string(r) + " is not in 1.." + std::to_string(q));
  const RCInstance& inst = config.instance();
  if (std::abs(inst.q - q) > 0.0) throw DomainError("q does not match the instance");

  SmallUnionFind uf(inst.num_vertices);
  uf.reset(inst.num_vertices);
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (config.open(e)) uf.unite(inst.edges[e].first, inst.edges[e].second);
  }
  std::vector<bool> pinned(inst.num_vertices, false);
  if (inst.wired_counting()) {
    for (int b : inst.boundary) pinned[uf.find(b)] = true;
  }
  const auto s32 = static_cast<std::uint32_t>(seed);
  const auto s64 = static_cast<std::uint32_t>(seed >> 32);
  std::seed_seq seq{s32, s64};
  std::mt19937_64 engine(seq);
  std::uniform_int_distribution<int> spin(1, q);
  std::vector<int> root_spin(inst.num_vertices, 0);
  PottsColoring out;
  out.spins.resize(inst.num_vertices);
  for (int v = 0; v < inst.num_vertices; ++v) {
    const int root = uf.find(v);
    if (root_spin[root] == 0) root_spin[root] = pinned[root] ? r : spin(engine);
    out.spins[v] = root_spin[root];
  }
  out.beta = inst.bulk_p < 1.0 ? -0.5 * std::log1p(-inst.bulk_p) : INFINITY;
  return out;
}

std::vector<HarnessRow> robust_harness(const PlanarGraph& g, int origin,
                                       std::span<const int> radii, double p, double q, double s,
                                       std::uint64_t n_samples, std::uint64_t seed,
                                       unsigned threads) {
  check_probability(s, "s");
  std::vector<HarnessRow> rows;
  for (int r : radii) {
    const RCInstance apex = ball_instance(g, origin, r, BoundaryCondition::apex(s), p, q);
    const RCInstance wired = ball_instance(g, origin, r, BoundaryCondition::wired(), p, q);
    HarnessRow row;
    row.radius = r;
    row.vertices = wired.num_vertices;
    row.edges = wired.num_edges();
    row.apex = estimate_connectivity(apex, 0, n_samples, seed, threads);
    row.wired = estimate_connectivity(wired, 0, n_samples, seed, threads);
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string rational_text(const Rational& x) { return x.str(); }

}  // namespace

DominationReport domination_check(const RCInstance& lower, const RCInstance& upper,
                                  std::optional<int> origin) {
  if (lower.edges != upper.edges) throw DomainError("instances must share the edge list");
  const ExactResult a = exact_rc(lower, origin);
  const ExactResult b = exact_rc(upper, origin);
  DominationReport report;
  report.lower_edges = a.edge_marginals;
  report.upper_edges = b.edge_marginals;
  report.lower_connectivity = a.connectivity;
  report.upper_connectivity = b.connectivity;
  for (std::size_t e = 0; e < a.edge_marginals.size(); ++e) {
    if (a.edge_marginals[e] > b.edge_marginals[e]) {
      throw DominationViolated("edge " + std::to_string(e) + ": " +
                               rational_text(a.edge_marginals[e]) + " > " +
                               rational_text(b.edge_marginals[e]));
    }
  }
  if (origin && *a.connectivity > *b.connectivity) {
    throw DominationViolated("connectivity: " + rational_text(*a.connectivity) + " > " +
                             rational_text(*b.connectivity));
  }
  return report;
}

std::uint64_t coupled_domination_check(const RCInstance& lower, const RCInstance& upper,
                                       int sweeps, std::uint64_t seed) {
  if (lower.edges != upper.edges) throw DomainError("instances must share the edge list");
  EdgeConfig lo(lower, false);
  EdgeConfig hi(upper, true);
  std::uint64_t checked = 0;
  for (int t = 1; t <= sweeps; ++t) {
    const auto u = sweep_uniforms(seed, 0, static_cast<std::uint64_t>(t), lower.num_edges());
    for (int e = 0; e < lower.num_edges(); ++e) {
      heat_bath_step(lo, e, u[e]);
      heat_bath_step(hi, e, u[e]);
      ++checked;
      if (lo.open(e) && !hi.open(e)) {
        throw DominationViolated("order broken at sweep " + std::to_string(t) + ", edge " +
                                 std::to_string(e));
      }
    }
  }
  return checked;
}

bool parameters_dominated(double p1, double q1, double p2, double q2) {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  if (!(q1 >= 1.0 && q2 >= 1.0)) throw DomainError("q must be at least 1");
  return p1 <= p2 && p1 * (1.0 - p2) * q2 <= p2 * (1.0 - p1) * q1;
}

}  // namespace rcm
