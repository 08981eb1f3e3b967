#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <random>

#include "rcm/errors.hpp"
#include "rcm/rc_simulator.hpp"

using namespace rcm;

namespace {

double to_double(const Rational& x) { return x.convert_to<double>(); }

bool within_sigmas(double estimate, double truth, std::uint64_t n, double k = 3.0) {
  const double sigma = std::sqrt(truth * (1 - truth) / static_cast<double>(n));
  return std::abs(estimate - truth) <= k * sigma + 1e-12;
}

RCInstance cycle_instance(int n, double p, double q) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return make_instance(n, edges, {0}, BoundaryCondition::free(), p, q);
}

}  // namespace

TEST_CASE("instances") {
  const RCInstance w = path_instance(4, BoundaryCondition::weakened(0.25), 0.5, 2);
  CHECK(w.p == std::vector<double>{0.25, 0.5, 0.25});
  CHECK(w.wired_counting());
  const RCInstance a = path_instance(3, BoundaryCondition::apex(0.1), 0.5, 2);
  CHECK(a.num_vertices == 4);
  CHECK(a.num_edges() == 5);
  CHECK(*a.apex == 3);
  CHECK(a.p[4] == 0.1);
  CHECK_FALSE(a.wired_counting());
  CHECK_THROWS_AS(triangle_instance(BoundaryCondition::free(), 1.5, 2), DomainError);
  CHECK_THROWS_AS(triangle_instance(BoundaryCondition::free(), 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(make_instance(2, {{0, 2}}, {}, BoundaryCondition::free(), 0.5, 2), DomainError);
  CHECK(parse_boundary_kind("apex") == BoundaryKind::apex);
  CHECK_THROWS_AS(parse_boundary_kind("glued"), DomainError);

  const PlanarGraph g = build_ball_patch(5, 5, 2);
  const RCInstance star = ball_instance(g, 0, 1, BoundaryCondition::wired(), 0.5, 2);
  CHECK(star.num_vertices == 6);
  CHECK(star.num_edges() == 5);
  CHECK(star.boundary == std::vector<int>{1, 2, 3, 4, 5});
  CHECK_THROWS_AS(ball_instance(g, 0, 4, BoundaryCondition::free(), 0.5, 2), TruncatedBall);
}

TEST_CASE("exact enumeration oracles") {
  const ExactResult t = exact_rc(triangle_instance(BoundaryCondition::free(), 0.5, 2));
  for (const auto& m : t.edge_marginals) CHECK(m == Rational(5, 14));
  CHECK(t.total == 1);
  CHECK(t.configurations == 8);

  const ExactResult path = exact_rc(path_instance(3, BoundaryCondition::wired(), 0.5, 2));
  CHECK(path.edge_marginals[0] == Rational(2, 5));
  CHECK(path.edge_marginals[1] == Rational(2, 5));

  for (double p : {0.25, 0.5, 0.875}) {
    const ExactResult b = exact_rc(cycle_instance(5, p, 1));
    for (const auto& m : b.edge_marginals) CHECK(m == Rational(p));
  }

  const PlanarGraph g = build_ball_patch(5, 5, 2);
  const ExactResult star = exact_rc(ball_instance(g, 0, 1, BoundaryCondition::wired(), 0.5, 2), 0);
  CHECK(*star.connectivity == Rational(31, 33));

  const auto dist = exact_distribution(triangle_instance(BoundaryCondition::free(), 0.5, 2));
  Rational sum = 0;
  for (const auto& x : dist) sum += x;
  CHECK(sum == 1);
  CHECK(dist[0] == Rational(8, 28));
  CHECK(dist[7] == Rational(2, 28));

  std::vector<std::pair<int, int>> many;
  for (int i = 0; i < 25; ++i) many.emplace_back(0, 1);
  CHECK_THROWS_AS(exact_rc(make_instance(2, many, {}, BoundaryCondition::free(), 0.5, 2)), BudgetExceeded);
}

TEST_CASE("wired equals free on the contracted graph") {
  const PlanarGraph g = build_ball_patch(5, 5, 3);
  for (int r : {1, 2}) {
    const RCInstance wired = ball_instance(g, 0, r, BoundaryCondition::wired(), 0.375, 3);
    if (wired.num_edges() > 20) continue;
    const int hub = wired.num_vertices;  // stand-in id for the merged boundary
    std::vector<int> relabel(wired.num_vertices);
    int next = 0;
    for (int v = 0; v < wired.num_vertices; ++v) relabel[v] = wired.is_boundary[v] ? -1 : next++;
    for (int v = 0; v < wired.num_vertices; ++v) {
      if (relabel[v] < 0) relabel[v] = next;
    }
    (void)hub;
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : wired.edges) edges.emplace_back(relabel[u], relabel[v]);
    const RCInstance contracted = make_instance(next + 1, edges, {next}, BoundaryCondition::free(), 0.375, 3);
    const ExactResult a = exact_rc(wired, 0);
    const ExactResult b = exact_rc(contracted, 0);
    CHECK(a.edge_marginals == b.edge_marginals);
    CHECK(*a.connectivity == *b.connectivity);
  }
  // Triangle with boundary {0, 1}: contracting gives a double edge to vertex 2
  // and a loop.
  const RCInstance tri = triangle_instance(BoundaryCondition::wired(), 0.5, 2, {0, 1});
  const RCInstance con = make_instance(2, {{0, 0}, {0, 1}, {0, 1}}, {0}, BoundaryCondition::free(), 0.5, 2);
  CHECK(exact_rc(tri).edge_marginals == exact_rc(con).edge_marginals);
}

TEST_CASE("component cache stays consistent") {
  const PlanarGraph g = build_ball_patch(5, 5, 3);
  for (auto bc : {BoundaryCondition::free(), BoundaryCondition::wired(), BoundaryCondition::apex(0.2)}) {
    const RCInstance inst = ball_instance(g, 0, 2, bc, 0.5, 2);
    EdgeConfig c(inst);
    CHECK(c.components() == (inst.wired_counting() ? inst.num_vertices - static_cast<int>(inst.boundary.size())
                                                   : inst.num_vertices));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(0, inst.num_edges() - 1);
    for (int step = 0; step < 2000; ++step) {
      c.set(pick(rng), rng() % 2 == 0);
      if (step % 7 == 0) CHECK(c.components() == c.recount());
    }
  }
}

TEST_CASE("cluster-closing identity") {
  const PlanarGraph g = build_ball_patch(5, 5, 3);
  const RCInstance inst = ball_instance(g, 0, 2, BoundaryCondition::free(), 0.5, 2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    EdgeConfig c(inst);
    for (int e = 0; e < inst.num_edges(); ++e) c.set(e, rng() % 3 != 0);
    const int kappa = c.components();
    std::vector<int> cluster;
    for (int v = 0; v < inst.num_vertices; ++v) {
      if (c.connected(0, v)) cluster.push_back(v);
    }
    EdgeConfig closed = c;
    for (int e = 0; e < inst.num_edges(); ++e) {
      if (c.connected(0, inst.edges[e].first) && c.connected(0, inst.edges[e].second)) closed.set(e, false);
    }
    CHECK(closed.components() == kappa + static_cast<int>(cluster.size()) - 1);
  }
}

TEST_CASE("heat-bath rule") {
  const RCInstance tri = triangle_instance(BoundaryCondition::free(), 0.5, 2);
  EdgeConfig c(tri);
  CHECK(heat_bath_probability(c, 0) == doctest::Approx(1.0 / 3));
  c.set(1, true);
  c.set(2, true);
  CHECK(heat_bath_probability(c, 0) == 0.5);
  heat_bath_step(c, 0, 0.49);
  CHECK(c.open(0));
  heat_bath_step(c, 0, 0.51);
  CHECK_FALSE(c.open(0));

  const RCInstance flat = triangle_instance(BoundaryCondition::free(), 0.3, 1);
  EdgeConfig f(flat);
  CHECK(heat_bath_probability(f, 0) == 0.3);
  f.set(1, true);
  f.set(2, true);
  CHECK(heat_bath_probability(f, 0) == 0.3);

  // Wired: both ends on the boundary are joined through it.
  const RCInstance w = path_instance(3, BoundaryCondition::wired(), 0.5, 2);
  EdgeConfig pw(w);
  CHECK(heat_bath_probability(pw, 0) == doctest::Approx(1.0 / 3));
  pw.set(1, true);
  CHECK(heat_bath_probability(pw, 0) == 0.5);
}

TEST_CASE("single chain matches the exact distribution") {
  // Pre-registered: 20000 states, one every 10 sweeps after 1000 sweeps of
  // burn-in, chi-square at the 0.001 level.
  for (const RCInstance& inst : {triangle_instance(BoundaryCondition::free(), 0.5, 2),
                                 path_instance(4, BoundaryCondition::wired(), 0.4, 3)}) {
    const auto exact = exact_distribution(inst);
    const int m = inst.num_edges();
    EdgeConfig c(inst);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0, 1);
    auto sweep = [&] {
      for (int e = 0; e < m; ++e) heat_bath_step(c, e, u(rng));
    };
    for (int i = 0; i < 1000; ++i) sweep();
    const int samples = 20000;
    std::vector<int> hist(exact.size(), 0);
    for (int s = 0; s < samples; ++s) {
      for (int i = 0; i < 10; ++i) sweep();
      int mask = 0;
      for (int e = 0; e < m; ++e) mask |= c.open(e) << e;
      ++hist[mask];
    }
    double chi2 = 0;
    for (std::size_t k = 0; k < exact.size(); ++k) {
      const double expected = samples * to_double(exact[k]);
      chi2 += (hist[k] - expected) * (hist[k] - expected) / expected;
    }
    const boost::math::chi_squared dist(static_cast<double>(exact.size() - 1));
    CHECK(chi2 < boost::math::quantile(boost::math::complement(dist, 0.001)));
  }
}

TEST_CASE("exact sampling") {
  const RCInstance flat = cycle_instance(6, 0.3, 1);
  for (std::uint64_t i = 0; i < 50; ++i) CHECK(sample_exact(flat, 9, i) == bernoulli_draw(flat, 9, i));

  const RCInstance tri = triangle_instance(BoundaryCondition::free(), 0.5, 2);
  CHECK(sample_exact(tri, 3, 17) == sample_exact(tri, 3, 17));
  const Estimate e = estimate_edge(tri, 0, 20000, 1);
  CHECK(within_sigmas(e.estimate, 5.0 / 14, e.n));
  const Estimate single = estimate_edge(tri, 0, 2000, 8, 1);
  const Estimate multi = estimate_edge(tri, 0, 2000, 8, 5);
  CHECK(single.successes == multi.successes);

  const RCInstance path = path_instance(3, BoundaryCondition::wired(), 0.5, 2);
  const Estimate pe = estimate_edge(path, 0, 20000, 2);
  CHECK(within_sigmas(pe.estimate, 0.4, pe.n));

  const RCInstance cycle = cycle_instance(12, 0.5, 8);
  bool stuck = false;
  for (std::uint64_t i = 0; i < 200 && !stuck; ++i) {
    try {
      sample_exact(cycle, 1, i, SamplerOptions{0});
    } catch (const NoCoalescence&) {
      stuck = true;
    }
  }
  CHECK(stuck);
}

TEST_CASE("connectivity estimates") {
  const PlanarGraph g = build_ball_patch(5, 5, 3);
  const RCInstance none = ball_instance(g, 0, 2, BoundaryCondition::wired(), 0.0, 2);
  const Estimate zero = estimate_connectivity(none, 0, 1000, 4);
  CHECK(zero.estimate == 0);
  CHECK(zero.ci_lo == 0);
  CHECK(zero.ci_hi == 0);
  CHECK(zero.exact);
  const RCInstance all = ball_instance(g, 0, 2, BoundaryCondition::free(), 1.0, 2);
  const Estimate one = estimate_connectivity(all, 0, 1000, 4);
  CHECK(one.estimate == 1);
  CHECK(one.ci_hi - one.ci_lo == 0);

  const RCInstance star = ball_instance(g, 0, 1, BoundaryCondition::wired(), 0.5, 2);
  const Estimate s = estimate_connectivity(star, 0, 20000, 6);
  CHECK(within_sigmas(s.estimate, 31.0 / 33, s.n));
  CHECK(s.ci_lo <= s.estimate);
  CHECK(s.estimate <= s.ci_hi);
  CHECK(s.seed == 6);

  const Estimate w = wilson_interval(0, 10);
  CHECK(w.ci_lo == 0);
  CHECK(w.ci_hi > 0);
  CHECK(wilson_interval(0, 2000).ci_lo == 0);
  CHECK(wilson_interval(2000, 2000).ci_hi == 1);
  CHECK_THROWS_AS(estimate_connectivity(star, 6, 10, 1), DomainError);
}

TEST_CASE("Potts coloring") {
  const RCInstance tri = triangle_instance(BoundaryCondition::free(), 0.5, 3);
  EdgeConfig all(tri, true);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = potts_coloring(all, 3, 1, seed);
    CHECK(c.spins[0] == c.spins[1]);
    CHECK(c.spins[1] == c.spins[2]);
  }
  const RCInstance path = path_instance(5, BoundaryCondition::free(), 0.0, 4);
  EdgeConfig empty(path);
  std::vector<int> count(5, 0);
  const int n = 20000;
  for (int seed = 0; seed < n; ++seed) ++count[potts_coloring(empty, 4, 1, seed).spins[2]];
  for (int k = 1; k <= 4; ++k) CHECK(within_sigmas(count[k] / double(n), 0.25, n));
  CHECK_THROWS_AS(potts_coloring(empty, 4, 5, 0), BadSpin);
  CHECK_THROWS_AS(potts_coloring(empty, 4, 0, 0), BadSpin);
  CHECK(potts_coloring(all, 3, 2, 0).beta == doctest::Approx(-0.5 * std::log(0.5)));

  // Wired path: ends carry r; the middle is r when joined to the boundary,
  // otherwise uniform.
  const RCInstance wired = path_instance(3, BoundaryCondition::wired(), 0.5, 2);
  const double joined = to_double(*exact_rc(wired, 1).connectivity);
  const double truth = joined + (1 - joined) / 2;
  int hits = 0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const auto coloring = potts_coloring(sample_exact(wired, 77, i), 2, 2, 1000 + i);
    CHECK(coloring.spins[0] == 2);
    CHECK(coloring.spins[2] == 2);
    hits += coloring.spins[1] == 2;
  }
  CHECK(within_sigmas(hits / double(draws), truth, draws));
}

TEST_CASE("apex construction") {
  const PlanarGraph g = build_ball_patch(5, 5, 3);
  for (int r : {1}) {
    const RCInstance free = ball_instance(g, 0, r, BoundaryCondition::free(), 0.5, 2);
    const RCInstance apex0 = ball_instance(g, 0, r, BoundaryCondition::apex(0.0), 0.5, 2);
    CHECK(*exact_rc(apex0, 0).connectivity == *exact_rc(free, 0).connectivity);
    const RCInstance bern = ball_instance(g, 0, r, BoundaryCondition::free(), 0.5, 1);
    const RCInstance apex1 = ball_instance(g, 0, r, BoundaryCondition::apex(1.0), 0.5, 1);
    const ExactResult a1 = exact_rc(apex1, 0);
    CHECK(*a1.connectivity == *exact_rc(bern, 0).connectivity);
    CHECK(*a1.connectivity == Rational(1) - Rational(1, 32));
    for (int e = free.num_edges(); e < apex1.num_edges(); ++e) CHECK(a1.edge_marginals[e] == 1);
  }
  const RCInstance p0 = path_instance(4, BoundaryCondition::apex(0.0), 0.6, 3);
  const RCInstance pf = path_instance(4, BoundaryCondition::free(), 0.6, 3);
  CHECK(*exact_rc(p0, 1).connectivity == *exact_rc(pf, 1).connectivity);

  const int radii[] = {1, 2};
  const auto rows = robust_harness(g, 0, radii, 0.5, 2, 0.1, 2000, 3);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].edges == 5);
  CHECK(rows[1].apex.n == 2000);
}

TEST_CASE("domination") {
  const std::vector<int> marked{0, 1};
  const RCInstance free = triangle_instance(BoundaryCondition::free(), 0.5, 2, marked);
  const RCInstance wired = triangle_instance(BoundaryCondition::wired(), 0.5, 2, marked);
  const DominationReport r = domination_check(free, wired, 2);
  for (std::size_t e = 0; e < 3; ++e) CHECK(r.lower_edges[e] <= r.upper_edges[e]);
  CHECK(r.lower_edges[0] < r.upper_edges[0]);

  const RCInstance f1 = path_instance(4, BoundaryCondition::free(), 0.5, 1);
  const RCInstance w1 = path_instance(4, BoundaryCondition::wired(), 0.5, 1);
  const DominationReport eq = domination_check(f1, w1, 1);
  CHECK(eq.lower_edges == eq.upper_edges);

  const PlanarGraph g = build_ball_patch(5, 5, 2);
  const RCInstance lo = ball_instance(g, 0, 1, BoundaryCondition::wired(), 0.4, 2);
  const RCInstance hi = ball_instance(g, 0, 1, BoundaryCondition::wired(), 0.6, 2);
  CHECK_NOTHROW(domination_check(lo, hi, 0));
  CHECK_THROWS_AS(domination_check(hi, lo, 0), DominationViolated);

  CHECK(coupled_domination_check(free, wired, 500, 3) == 1500);
  CHECK(coupled_domination_check(lo, hi, 500, 3) == 2500);

  CHECK(parameters_dominated(0.4, 2, 0.6, 2));
  CHECK_FALSE(parameters_dominated(0.6, 2, 0.4, 2));
  CHECK(parameters_dominated(0.5, 2, 0.55, 1));
  CHECK_FALSE(parameters_dominated(0.5, 1, 0.55, 2));
}
