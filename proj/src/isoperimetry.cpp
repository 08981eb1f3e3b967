#include "rcm/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcm/errors.hpp"

namespace rcm {

Ratio iso_exact_squared(int degree, int codegree) {
  classify(degree, codegree);
  const std::int64_t a = degree - 2;
  const std::int64_t b = codegree - 2;
  return Ratio(a * (a * b - 4), b);
}

double iso_exact(int degree, int codegree) {
  if (classify(degree, codegree) == Geometry::euclidean) return 0.0;
  const double a = degree - 2;
  const double b = codegree - 2;
  return a * std::sqrt(1.0 - 4.0 / (a * b));
}

bool at_least_iota(const Ratio& r, int degree, int codegree) {
  return r >= 0 && r * r >= iso_exact_squared(degree, codegree);
}

double beta_closed_form(int degree, int codegree) {
  classify(degree, codegree);
  const double d = degree;
  const double c = codegree;
  const double s = d * c - 2 * d - 2 * c;
  return (d * (c - 2) + std::sqrt((d - 2) * (c - 2) * s)) / (2 * (d * c - d - c));
}

IsoReport beta_delta_exact(int degree, int codegree) {
  IsoReport r;
  r.degree = degree;
  r.codegree = codegree;
  r.amenable = classify(degree, codegree) == Geometry::euclidean;
  r.iota = iso_exact(degree, codegree);
  r.dual_iota = iso_exact(codegree, degree);
  r.beta = 2.0 / (degree - r.iota);
  r.delta = 2.0 / (degree + r.iota);
  r.dual_beta = 2.0 / (codegree - r.dual_iota);
  r.dual_delta = 2.0 / (codegree + r.dual_iota);
  r.beta_closed_form = beta_closed_form(degree, codegree);
  return r;
}

Ratio RatioProfile::beta_quotient() const {
  if (!vertices_per_internal_edge) throw NoInternalEdges("G(K) has no edges");
  return *vertices_per_internal_edge;
}

RatioProfile ratio_profile(const Patch& patch) {
  if (patch.vertices.empty()) throw EmptyPatch("ratio profile of an empty set");
  const auto k = static_cast<std::int64_t>(patch.vertices.size());
  RatioProfile p;
  p.boundary_per_vertex = Ratio(static_cast<std::int64_t>(patch.boundary_edges.size()), k);
  if (!patch.internal_edges.empty()) {
    p.vertices_per_internal_edge = Ratio(k, static_cast<std::int64_t>(patch.internal_edges.size()));
  }
  p.vertices_per_star_edge = Ratio(k, static_cast<std::int64_t>(patch.star_edges.size()));
  return p;
}

namespace {

void require_interior_ball(const PlanarGraph& g, int origin, int radius) {
  if (radius < 0) return;
  ball(g, origin, radius);
}

// Redelmeier enumeration of connected vertex sets containing the origin.
class SiteEnumerator {
 public:
  SiteEnumerator(const PlanarGraph& g, int origin, int max_size, std::uint64_t budget)
      : g_(g), max_size_(max_size), budget_(budget), degree_(g.spec.degree),
        in_set_(g.num_vertices(), false), marked_(g.num_vertices(), false) {
    result_.best_by_size.assign(static_cast<std::size_t>(max_size) + 1, Ratio(0));
    best_found_.assign(static_cast<std::size_t>(max_size) + 1, false);
    marked_[origin] = true;
    std::vector<int> untried{origin};
    recurse(untried);
  }

  BruteForceResult take() { return std::move(result_); }

 private:
  void recurse(std::vector<int> untried) {
    while (!untried.empty()) {
      const int v = untried.back();
      untried.pop_back();

      int joins = 0;
      for (int e : g_.rotation[v]) joins += in_set_[g_.other_end(e, v)] ? 1 : 0;
      in_set_[v] = true;
      current_.push_back(v);
      internal_ += joins;
      record();

      if (static_cast<int>(current_.size()) < max_size_) {
        std::vector<int> next = untried;
        std::vector<int> newly;
        for (int e : g_.rotation[v]) {
          const int w = g_.other_end(e, v);
          if (!marked_[w] && !g_.interior[w]) {
            result_.truncated = true;
            continue;
          }
          if (!marked_[w]) {
            marked_[w] = true;
            newly.push_back(w);
            next.push_back(w);
          }
        }
        recurse(std::move(next));
        for (int w : newly) marked_[w] = false;
      }

      internal_ -= joins;
      current_.pop_back();
      in_set_[v] = false;
    }
  }

  void record() {
    if (++result_.sets_enumerated > budget_) {
      throw BudgetExceeded("more than " + std::to_string(budget_) + " connected sets");
    }
    const auto size = static_cast<std::int64_t>(current_.size());
    const Ratio ratio(degree_ * size - 2 * internal_, size);
    auto& by_size = result_.best_by_size[size];
    if (!best_found_[size] || ratio < by_size) {
      by_size = ratio;
      best_found_[size] = true;
    }
    if (!have_best_ || ratio < result_.min_ratio) {
      have_best_ = true;
      result_.min_ratio = ratio;
      result_.argmin = sorted_current();
    } else if (ratio == result_.min_ratio) {
      auto candidate = sorted_current();
      if (candidate < result_.argmin) result_.argmin = std::move(candidate);
    }
  }

  std::vector<int> sorted_current() const {
    std::vector<int> s = current_;
    std::sort(s.begin(), s.end());
    return s;
  }

  const PlanarGraph& g_;
  int max_size_;
  std::uint64_t budget_;
  std::int64_t degree_;
  std::vector<bool> in_set_;
  std::vector<bool> marked_;
  std::vector<int> current_;
  std::int64_t internal_ = 0;
  bool have_best_ = false;
  std::vector<bool> best_found_;
  BruteForceResult result_;
};

}  // namespace

BruteForceResult brute_force_iso(const PlanarGraph& g, int origin, int max_size,
                                 std::uint64_t budget) {
  if (max_size < 1) throw DomainError("max_size must be at least 1");
  require_interior_ball(g, origin, 0);
  return SiteEnumerator(g, origin, max_size, budget).take();
}

IterationTrace peres_iterate(const DualPair& pair, std::span<const int> initial, int steps) {
  const PlanarGraph& g = pair.primal;
  const PlanarGraph& h = pair.dual;
  const double d = g.spec.degree;
  const double dh = g.spec.codegree;

  IterationTrace trace;
  trace.iota = iso_exact(g.spec.degree, g.spec.codegree);
  trace.dual_iota = iso_exact(g.spec.codegree, g.spec.degree);
  const double iota = trace.iota;
  const double iota_h = trace.dual_iota;
  trace.a = std::pow((d - iota) * (dh - iota_h) / ((d + iota) * (dh + iota_h)), 2);
  const double slack_dual = std::pow((d - iota) * (dh - iota_h) / (dh + iota_h), 2);
  const double slack_primal = std::pow(d - iota, 2);

  if (initial.empty()) throw EmptyPatch("initial set is empty");

  auto describe = [](const PlanarGraph& graph, std::span<const int> set, double constant,
                     std::int64_t& boundary, std::int64_t& internal) {
    const Patch p = patch_edge_sets(graph, set);
    boundary = static_cast<std::int64_t>(p.boundary_edges.size());
    internal = static_cast<std::int64_t>(p.internal_edges.size());
    return static_cast<double>(boundary) / static_cast<double>(p.size()) - constant;
  };

  std::vector<int> current(initial.begin(), initial.end());
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());
  try {
    IterationStep step;
    step.n = 0;
    step.primal_set = current;
    step.kappa = describe(g, current, iota, step.primal_boundary, step.primal_internal);
    trace.steps.push_back(std::move(step));
    for (int n = 0; n < steps; ++n) {
      auto& cur = trace.steps.back();
      const auto k_hat = hat(pair, Side::primal, cur.primal_set);
      cur.dual_set = prime(pair, Side::primal, k_hat);
      cur.lambda = describe(h, cur.dual_set, iota_h, cur.dual_boundary, cur.dual_internal);
      const auto l_hat = hat(pair, Side::dual, cur.dual_set);
      IterationStep next;
      next.n = n + 1;
      next.primal_set = prime(pair, Side::dual, l_hat);
      next.kappa = describe(g, next.primal_set, iota, next.primal_boundary, next.primal_internal);
      const double b_n = slack_dual / static_cast<double>(cur.dual_internal) +
                         slack_primal / static_cast<double>(next.primal_internal);
      cur.slack = b_n;
      cur.contraction_holds = 2 * next.kappa <= trace.a * 2 * cur.kappa + b_n;
      trace.steps.push_back(std::move(next));
    }
  } catch (const FrontierContact&) {
    trace.frontier_contact = true;
  } catch (const FrontierVertex&) {
    trace.frontier_contact = true;
  }
  return trace;
}

namespace {

// Redelmeier enumeration over edges. A virtual root is adjacent to every
// edge at the origin, so each enumerated edge set is connected and touches
// the origin.
class BondEnumerator {
 public:
  BondEnumerator(const PlanarGraph& g, int origin, int n_max, std::uint64_t budget)
      : g_(g), n_max_(n_max), budget_(budget), marked_(g.num_edges(), false) {
    counts_.assign(static_cast<std::size_t>(n_max) + 1, 0);
    counts_[0] = 1;
    if (n_max == 0) return;
    std::vector<int> untried;
    for (int e : g.rotation[origin]) {
      marked_[e] = true;
      untried.push_back(e);
    }
    recurse(std::move(untried), 0);
  }

  std::vector<std::uint64_t> take() { return std::move(counts_); }

 private:
  void recurse(std::vector<int> untried, int size) {
    while (!untried.empty()) {
      const int e = untried.back();
      untried.pop_back();
      if (++visited_ > budget_) {
        throw BudgetExceeded("more than " + std::to_string(budget_) + " bond animals");
      }
      ++counts_[size + 1];
      if (size + 1 < n_max_) {
        std::vector<int> next = untried;
        std::vector<int> newly;
        for (int x : {g_.edges[e].u, g_.edges[e].v}) {
          for (int f : g_.rotation[x]) {
            if (!marked_[f]) {
              marked_[f] = true;
              newly.push_back(f);
              next.push_back(f);
            }
          }
        }
        recurse(std::move(next), size + 1);
        for (int f : newly) marked_[f] = false;
      }
    }
  }

  const PlanarGraph& g_;
  int n_max_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
  std::vector<bool> marked_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace

std::pair<double, double> growth_roots(int degree) {
  if (degree < 3) throw DegenerateSpec("degree must be at least 3");
  const double b = degree - 1.0;
  const double disc = std::sqrt(b * b - 4.0);
  return {(b - disc) / 2.0, (b + disc) / 2.0};
}

std::vector<std::int64_t> sphere_series(int degree, int max_radius) {
  if (max_radius < 0) throw DomainError("radius must be nonnegative");
  // c_n = (d-1) c_{n-1} - c_{n-2} are the coefficients of 1/(z^2+(1-d)z+1).
  std::vector<std::int64_t> c(static_cast<std::size_t>(max_radius) + 1);
  for (int n = 0; n <= max_radius; ++n) {
    const std::int64_t a = n >= 1 ? c[n - 1] : 0;
    const std::int64_t b = n >= 2 ? c[n - 2] : 0;
    c[n] = n == 0 ? 1 : (degree - 1) * a - b;
  }
  std::vector<std::int64_t> s(c.size());
  for (int n = 0; n <= max_radius; ++n) {
    s[n] = c[n] + (n >= 1 ? c[n - 1] : 0) + (n >= 2 ? c[n - 2] : 0);
  }
  return s;
}

double sphere_partial_fraction(int n, double gamma) {
  auto c = [gamma](int k) {
    if (k < 0) return 0.0;
    double sum = 0;
    for (int j = 0; j <= k; ++j) sum += std::pow(gamma, j) * std::pow(gamma, -(k - j));
    return sum;
  };
  return c(n) + c(n - 1) + c(n - 2);
}

double sphere_printed_form(int n, double gamma) {
  return std::pow(gamma, n) *
         (3.0 - std::pow(gamma, -2 * n - 2) - std::pow(gamma, -2 * n) - std::pow(gamma, -2 * n + 2)) /
         (1.0 - std::pow(gamma, -2));
}

double sphere_explicit_form(int degree, int n, double gamma) {
  return std::pow(gamma, n - 1) *
         (degree - std::pow(gamma, -2 * n - 1) - std::pow(gamma, -2 * n) -
          std::pow(gamma, -2 * n + 1)) /
         (1.0 - std::pow(gamma, -2));
}

AnimalCounts animal_counts(const PlanarGraph& g, int origin, int n_max, std::uint64_t budget) {
  if (n_max < 0) throw DomainError("n_max must be nonnegative");
  require_interior_ball(g, origin, n_max - 1);
  AnimalCounts out;
  out.counts = BondEnumerator(g, origin, n_max, budget).take();
  const double d = g.spec.degree;
  out.log_bound.assign(out.counts.size(), 0.0);
  for (int n = 0; n <= n_max; ++n) {
    out.log_bound[n] = n * std::log(d - 1) - ((d - 2) * n + d) * std::log(1 - 1 / (d - 1));
    if (std::log(static_cast<double>(out.counts[n])) > out.log_bound[n]) out.bound_holds = false;
  }
  if (n_max >= 1) {
    const double root = std::log(static_cast<double>(out.counts[n_max])) / n_max;
    out.growth_below_e_d_minus_1 = root < 1 + std::log(d - 1);
  }
  return out;
}

}  // namespace rcm
