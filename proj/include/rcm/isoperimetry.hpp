#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "rcm/tessellation.hpp"

namespace rcm {

using Ratio = boost::rational<std::int64_t>;

/// Square of the edge isoperimetric constant of the {d, d̂} tessellation,
/// (d-2)((d-2)(d̂-2) - 4)/(d̂-2), kept exact for tie-free comparisons.
Ratio iso_exact_squared(int degree, int codegree);

/// ι'_E = (d-2) sqrt(1 - 4/((d-2)(d̂-2))). Exactly 0.0 for euclidean specs.
double iso_exact(int degree, int codegree);

/// r >= ι'_E, decided on squares.
bool at_least_iota(const Ratio& r, int degree, int codegree);

/// Isoperimetric constants of a {d, d̂} tessellation and of its dual.
struct IsoReport {
  int degree = 0;
  int codegree = 0;
  bool amenable = false;
  double iota = 0;
  double beta = 0;
  double delta = 0;
  double dual_iota = 0;
  double dual_beta = 0;
  double dual_delta = 0;
  /// β from the closed form in (d, d̂) alone; must agree with 2/(d - ι).
  double beta_closed_form = 0;
};

IsoReport beta_delta_exact(int degree, int codegree);

/// [d(d̂-2) + sqrt((d-2)(d̂-2)(dd̂-2d-2d̂))] / (2(dd̂-d-d̂)).
double beta_closed_form(int degree, int codegree);

/// Exact quotients |∂_E K|/|K|, |K|/|E(K)| and |K|/|E*(K)|.
struct RatioProfile {
  Ratio boundary_per_vertex;
  std::optional<Ratio> vertices_per_internal_edge;
  Ratio vertices_per_star_edge;

  /// Throws NoInternalEdges when E(K) is empty.
  Ratio beta_quotient() const;
};

/// Throws EmptyPatch for K = ∅.
RatioProfile ratio_profile(const Patch& patch);

struct BruteForceResult {
  Ratio min_ratio;
  std::vector<int> argmin;  // lexicographically smallest minimiser
  /// best_by_size[n] = min |∂_E K|/|K| over connected K ∋ o with |K| = n
  /// (index 0 unused).
  std::vector<Ratio> best_by_size;
  std::uint64_t sets_enumerated = 0;
  /// Some candidate set would have needed a frontier vertex; those sets were
  /// skipped, so the minimum is over sets inside the interior only.
  bool truncated = false;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 4'000'000'000ULL;

/// Exhaustive minimum of |∂_E K|/|K| over connected K containing `origin`
/// with |K| <= max_size (Redelmeier enumeration). Frontier vertices act as a
/// wall (see BruteForceResult::truncated). Throws TruncatedBall if the origin
/// is not interior and BudgetExceeded past `budget` sets.
BruteForceResult brute_force_iso(const PlanarGraph& g, int origin, int max_size,
                                 std::uint64_t budget = kDefaultEnumerationBudget);

struct IterationStep {
  int n = 0;
  std::vector<int> primal_set;  // K_n
  std::int64_t primal_boundary = 0;
  std::int64_t primal_internal = 0;
  double kappa = 0;  // |∂K_n|/|K_n| - ι
  std::vector<int> dual_set;  // L_n, empty on the last step
  std::int64_t dual_boundary = 0;
  std::int64_t dual_internal = 0;
  double lambda = 0;  // |∂L_n|/|L_n| - ι̂
  /// Slack b_n and whether 2κ_{n+1} <= a·2κ_n + b_n, set when K_{n+1} exists.
  std::optional<double> slack;
  std::optional<bool> contraction_holds;
};

struct IterationTrace {
  double a = 0;  // ((d-ι)(d̂-ι̂) / ((d+ι)(d̂+ι̂)))^2
  double iota = 0;
  double dual_iota = 0;
  std::vector<IterationStep> steps;
  /// Set when a closure left the interior of the patch; the trace is partial.
  bool frontier_contact = false;
};

/// L_n = (K̂_n)', K_{n+1} = (L̂_n)', starting from K0 in the primal graph.
IterationTrace peres_iterate(const DualPair& pair, std::span<const int> initial, int steps);

struct AnimalCounts {
  std::vector<std::uint64_t> counts;  // counts[n] = b_n, counts[0] = 1
  /// log of (d-1)^n (1 - 1/(d-1))^{-((d-2)n + d)} per n.
  std::vector<double> log_bound;
  bool bound_holds = true;
  /// b_n^{1/n} < e(d-1) at the largest n.
  bool growth_below_e_d_minus_1 = true;
};

/// Roots of z^2 + (1-d)z + 1, smaller first. They are reciprocal.
std::pair<double, double> growth_roots(int degree);

/// Sphere sizes |B_n \ B_{n-1}|, n = 0..max_radius, of a {d, 6} tessellation
/// from the generating function (z^2+z+1)/(z^2+(1-d)z+1), in integers.
std::vector<std::int64_t> sphere_series(int degree, int max_radius);

/// Coefficient of z^n in (z^2+z+1) Σ(γz)^k Σ(z/γ)^m for a root γ. The
/// expression is symmetric under γ -> 1/γ.
double sphere_partial_fraction(int n, double gamma);

/// γ^n (3 - γ^{-2n-2} - γ^{-2n} - γ^{-2n+2}) / (1 - γ^{-2}).
double sphere_printed_form(int n, double gamma);

/// γ^{n-1} (d - γ^{-2n-1} - γ^{-2n} - γ^{-2n+1}) / (1 - γ^{-2}), the explicit
/// coefficient for n >= 1 with γ + 1/γ = d - 1.
double sphere_explicit_form(int degree, int n, double gamma);

/// Connected subgraphs containing `origin` with exactly n edges, n <= n_max,
/// counted by Redelmeier enumeration on the line graph.
AnimalCounts animal_counts(const PlanarGraph& g, int origin, int n_max,
                           std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace rcm
