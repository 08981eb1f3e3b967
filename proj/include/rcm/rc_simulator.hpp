#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rcm/tessellation.hpp"

namespace rcm {

using Rational = boost::multiprecision::cpp_rational;

enum class BoundaryKind { free, wired, weakened, apex };

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::free;
  double s = 0;  // boundary edge probability for weakened and apex

  static BoundaryCondition free() { return {BoundaryKind::free, 0}; }
  static BoundaryCondition wired() { return {BoundaryKind::wired, 0}; }
  static BoundaryCondition weakened(double s) { return {BoundaryKind::weakened, s}; }
  static BoundaryCondition apex(double s) { return {BoundaryKind::apex, s}; }
};

std::string to_string(BoundaryKind kind);
/// Parses free, wired, weakened, apex. Throws DomainError otherwise.
BoundaryKind parse_boundary_kind(const std::string& text);

/// Finite random-cluster instance. Wired and weakened instances count
/// components that avoid the boundary set (κ*); free and apex instances count
/// all of them (κ), isolated vertices included. An apex instance has one extra
/// vertex joined to every original vertex.
struct RCInstance {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> p;  // per edge
  double q = 1;
  double bulk_p = 0;
  BoundaryCondition bc;
  std::vector<int> boundary;  // sorted, original vertex ids
  std::vector<bool> is_boundary;
  std::optional<int> apex;
  /// (neighbour, edge id) pairs.
  std::vector<std::vector<std::pair<int, int>>> adjacency;

  int num_edges() const { return static_cast<int>(edges.size()); }
  bool wired_counting() const {
    return bc.kind == BoundaryKind::wired || bc.kind == BoundaryKind::weakened;
  }
};

/// Builds an instance on vertices 0..n-1. Weakened instances use s on edges
/// with an endpoint in `boundary`; apex instances add vertex n with edges to
/// all of 0..n-1 carrying probability s. Throws DomainError on p, s outside
/// [0,1], q < 1 or bad vertex ids.
RCInstance make_instance(int num_vertices, std::vector<std::pair<int, int>> edges,
                         std::vector<int> boundary, BoundaryCondition bc, double p, double q);

/// Same, with one probability per edge (apex edges still get bc.s).
RCInstance make_instance(int num_vertices, std::vector<std::pair<int, int>> edges,
                         std::vector<int> boundary, BoundaryCondition bc, std::vector<double> p,
                         double q);

/// Triangle on {0,1,2}.
RCInstance triangle_instance(BoundaryCondition bc, double p, double q,
                             std::vector<int> boundary = {});
/// Path 0 - 1 - ... - (n-1) with boundary {0, n-1}.
RCInstance path_instance(int n, BoundaryCondition bc, double p, double q);

/// G(B_r(o)) with boundary the sphere at distance r. The origin becomes
/// vertex 0. Throws TruncatedBall if the ball leaves the interior of g.
RCInstance ball_instance(const PlanarGraph& g, int origin, int radius, BoundaryCondition bc,
                         double p, double q);

/// Edge configuration with a cached union-find over its open edges (plus a
/// boundary super-node for wired counting). Opening an edge updates the cache
/// in place; closing one invalidates it and the next query rebuilds it.
class EdgeConfig {
 public:
  explicit EdgeConfig(const RCInstance& instance, bool all_open = false);

  const RCInstance& instance() const { return *instance_; }
  bool open(int e) const { return bits_[e] != 0; }
  void set(int e, bool open);
  int open_count() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  /// κ or κ* according to the instance, from the cache.
  int components() const;
  /// Same quantity computed from scratch.
  int recount() const;
  /// Connected by open edges (through the boundary super-node when wired).
  bool connected(int u, int v) const;
  /// Connected by open edges other than e.
  bool connected_off(int e) const;

  bool operator==(const EdgeConfig& other) const { return bits_ == other.bits_; }
  /// Coordinatewise order.
  bool below(const EdgeConfig& other) const;

 private:
  void rebuild() const;
  int find(int x) const;

  const RCInstance* instance_;
  std::vector<std::uint8_t> bits_;
  mutable std::vector<int> parent_;
  mutable int sets_ = 0;
  mutable bool valid_ = false;
};

/// o is joined to some vertex of the boundary set by open edges that avoid
/// the apex.
bool connects_to_boundary(const EdgeConfig& config, int origin);

struct ExactResult {
  std::vector<Rational> edge_marginals;
  std::optional<Rational> connectivity;  // P(o <-> boundary), if an origin was given
  Rational total;  // sum of all probabilities, exactly 1
  std::uint64_t configurations = 0;
};

inline constexpr int kExactEdgeCap = 24;

/// Exact marginals by enumerating all 2^|E| configurations. Edge
/// probabilities and q are converted exactly from their binary values.
/// Throws BudgetExceeded above kExactEdgeCap edges.
ExactResult exact_rc(const RCInstance& instance, std::optional<int> origin = std::nullopt);

/// Probability of every configuration, indexed by the bitmask of open edges
/// (bit e = edge e). Capped at 20 edges.
std::vector<Rational> exact_distribution(const RCInstance& instance);

/// Single-site Gibbs update of edge e with uniform u: open iff u < p_e when
/// the endpoints are joined off e, else iff u < p_e / (p_e + (1 - p_e) q).
void heat_bath_step(EdgeConfig& config, int edge, double u);

/// Opening probability heat_bath_step uses for edge e in this configuration.
double heat_bath_probability(const EdgeConfig& config, int edge);

struct SamplerOptions {
  int max_doublings = 20;  // horizon up to 2^max_doublings sweeps
};

/// Uniforms of sweep t (t = 1 is the sweep ending at time 0) for draw
/// `draw`, one per edge in edge-id order.
std::vector<double> sweep_uniforms(std::uint64_t seed, std::uint64_t draw, std::uint64_t t,
                                   int num_edges);

/// Exact draw by coupling from the past: the all-closed and all-open chains
/// run edge-id sweeps from time -T with shared randomness, T doubling until
/// they meet. Throws NoCoalescence past the cap; DomainError for q < 1.
EdgeConfig sample_exact(const RCInstance& instance, std::uint64_t seed, std::uint64_t draw = 0,
                        const SamplerOptions& options = {});

/// Independent Bernoulli(p_e) draw from the randomness of sweep 1.
EdgeConfig bernoulli_draw(const RCInstance& instance, std::uint64_t seed, std::uint64_t draw = 0);

struct Estimate {
  double estimate = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t successes = 0;
  bool exact = false;  // deterministic instance or exact enumeration
};

/// Wilson score interval for k successes in n trials.
Estimate wilson_interval(std::uint64_t successes, std::uint64_t n, double z = 1.959963984540054);

/// Monte Carlo estimate of P(o <-> boundary) from n exact draws with indices
/// 0..n-1. Instances whose edge probabilities are all 0 or 1 are answered
/// exactly. Draws run on `threads` workers (0 = hardware concurrency); the
/// result does not depend on the worker count.
Estimate estimate_connectivity(const RCInstance& instance, int origin, std::uint64_t n_samples,
                               std::uint64_t seed, unsigned threads = 0,
                               const SamplerOptions& options = {});

/// Same for the event {edge e open}.
Estimate estimate_edge(const RCInstance& instance, int edge, std::uint64_t n_samples,
                       std::uint64_t seed, unsigned threads = 0,
                       const SamplerOptions& options = {});

struct PottsColoring {
  std::vector<int> spins;  // values in 1..q, one per vertex
  double beta = 0;         // -log(1 - p)/2 for the bulk p
};

/// Uniform spin per open cluster; under wired counting the clusters meeting
/// the boundary all get r. Throws BadSpin unless 1 <= r <= q, DomainError
/// for q < 2.
PottsColoring potts_coloring(const EdgeConfig& config, int q, int r, std::uint64_t seed);

struct HarnessRow {
  int radius = 0;
  int vertices = 0;
  int edges = 0;
  Estimate apex;   // P(A_i) on H_i with apex probability s
  Estimate wired;  // wired P(o <-> boundary) on the same ball
};

/// For each radius, P(A_i) under the apex instance on G(B_r(o)) together with
/// the wired connectivity estimate. Trend table only.
std::vector<HarnessRow> robust_harness(const PlanarGraph& g, int origin,
                                       std::span<const int> radii, double p, double q, double s,
                                       std::uint64_t n_samples, std::uint64_t seed,
                                       unsigned threads = 0);

struct DominationReport {
  std::vector<Rational> lower_edges;
  std::vector<Rational> upper_edges;
  std::optional<Rational> lower_connectivity;
  std::optional<Rational> upper_connectivity;
};

/// Exact check that `lower` is dominated by `upper` on every single-edge event
/// and on {o <-> boundary}. Both instances need the same edge list. Throws
/// DominationViolated.
DominationReport domination_check(const RCInstance& lower, const RCInstance& upper,
                                  std::optional<int> origin = std::nullopt);

/// Runs heat-bath chains for `lower` from all-closed and `upper` from
/// all-open with shared uniforms and checks the order after every update.
/// Returns the number of updates checked; throws DominationViolated.
std::uint64_t coupled_domination_check(const RCInstance& lower, const RCInstance& upper,
                                       int sweeps, std::uint64_t seed);

/// p1 <= p2 and p1/((1-p1) q1) <= p2/((1-p2) q2): RC(p1,q1) is then
/// dominated by RC(p2,q2) under the same boundary condition.
bool parameters_dominated(double p1, double q1, double p2, double q2);

}  // namespace rcm
