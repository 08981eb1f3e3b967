#include <doctest.h>

#include <cmath>
#include <random>

#include "rcm/critical_bounds.hpp"
#include "rcm/errors.hpp"

using namespace rcm;

TEST_CASE("dual parameter and h") {
  CHECK(dual_parameter(0.5, 1) == 0.5);
  CHECK(dual_parameter(2.0 / 3, 4) == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(dual_parameter(0, 3) == 1);
  CHECK(dual_parameter(1, 3) == 0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> up(0.001, 0.999), uq(1, 50);
  for (int i = 0; i < 100; ++i) {
    const double p = up(rng), q = uq(rng);
    const double pd = dual_parameter(p, q);
    CHECK(std::abs(dual_parameter(pd, q) - p) < 1e-12);
    CHECK(std::abs(h(p) * h(pd) - q) < 1e-12 * q * std::max(1.0, h(p) * h(pd)));
    CHECK(dual_parameter(p + 1e-4, q) < pd);
  }
  CHECK(h(0.5) == 1);
  CHECK_THROWS_AS(h(1.0), DomainError);
  CHECK(h_inverse(h(0.3)) == doctest::Approx(0.3));
  CHECK_THROWS_AS(dual_parameter(0.5, 0.5), DomainError);
}

TEST_CASE("self-dual point") {
  CHECK(self_dual_point(1) == 0.5);
  CHECK(self_dual_point(4) == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(self_dual_point(9) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(dual_parameter(0.75, 9) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("critical value partners") {
  CHECK(pcpu_partner(2, 0.5) == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(pcpu_partner(1, 0.5) == doctest::Approx(0.5));
  for (double x : {0.1, 0.37, 0.8}) {
    CHECK(std::abs(pcpu_partner(3.5, pcpu_partner(3.5, x)) - x) < 1e-12);
  }
  CHECK_THROWS_AS(pcpu_partner(2, 0), DomainError);
  CHECK_THROWS_AS(pcpu_partner(2, 1), DomainError);
}

TEST_CASE("p and beta") {
  CHECK(p_from_beta(0) == 0);
  CHECK(beta_from_p(0) == 0);
  for (double b : {0.01, 0.3, 1.2, 4.0}) CHECK(std::abs(beta_from_p(p_from_beta(b)) - b) < 1e-15 * std::max(1.0, b) * 4);
  for (double p : {0.01, 0.5, 0.9}) CHECK(std::abs(p_from_beta(beta_from_p(p)) - p) < 1e-15);
  const ModelParams m = ModelParams::from_p(0.75, 9);
  CHECK(*m.b == doctest::Approx(0.5));
  CHECK(*m.b_plus == doctest::Approx(0.5));
  CHECK_FALSE(ModelParams::from_p(0.5, 1).b.has_value());
  CHECK(*ModelParams::from_p(0.2, 4).b_plus == 0);
  CHECK(ModelParams::from_beta(0.4, 2).p == doctest::Approx(1 - std::exp(-0.8)));
}

TEST_CASE("free death threshold") {
  const double beta = beta_delta_exact(5, 5).beta;
  const ThresholdDecision at_half = free_death_threshold(5, beta, 0.5, 2);
  REQUIRE(at_half.minimal_q.has_value());
  CHECK(*at_half.minimal_q == doctest::Approx(std::exp((1 + std::log(4.0)) / ((5 + std::sqrt(5.0)) / 10))));
  CHECK(*at_half.minimal_q == doctest::Approx(27.05).epsilon(1e-3));
  CHECK(at_half.verdict == Verdict::fails);
  CHECK(free_death_threshold(5, beta, 0.5, 28).verdict == Verdict::holds);
  CHECK(free_death_threshold(5, beta, 0.5, 1).verdict == Verdict::fails);
  // b >= β: p/(1-p) = q^β.
  const double q = 10;
  const double p_edge = std::pow(q, 0.8) / (1 + std::pow(q, 0.8));
  CHECK_THROWS_AS(free_death_threshold(5, beta, p_edge, q), Inapplicable);
  // At the minimal q the condition flips.
  const double p = 0.6;
  const double qmin = *free_death_threshold(5, beta, p, 2).minimal_q;
  CHECK(free_death_threshold(5, beta, p, qmin * 1.001).verdict == Verdict::holds);
  CHECK(free_death_threshold(5, beta, p, qmin * 0.999).verdict == Verdict::fails);
}

TEST_CASE("wired uniqueness mirrors free death on the dual") {
  const IsoReport iso = beta_delta_exact(5, 4);
  for (double p : {0.3, 0.5, 0.7, 0.9, 0.97, 0.995}) {
    for (double q : {1.5, 3.0, 10.0, 50.0, 400.0, 5000.0}) {
      const double pd = dual_parameter(p, q);
      bool wired_inapplicable = false, free_inapplicable = false;
      ThresholdDecision w, f;
      try {
        w = wired_uniqueness_threshold(4, iso.dual_beta, p, q);
      } catch (const Inapplicable&) {
        wired_inapplicable = true;
      }
      try {
        f = free_death_threshold(4, iso.dual_beta, pd, q);
      } catch (const Inapplicable&) {
        free_inapplicable = true;
      }
      CAPTURE(p);
      CAPTURE(q);
      CHECK(wired_inapplicable == free_inapplicable);
      if (!wired_inapplicable) {
        CHECK(w.verdict == f.verdict);
        CHECK(*w.log_q_threshold == doctest::Approx(*f.log_q_threshold));
        const bool inside = w.minimal_q && q > *w.minimal_q && q < *w.maximal_q;
        CHECK(inside == (w.verdict == Verdict::holds));
      }
    }
  }
  const double beta_dual = beta_delta_exact(5, 5).dual_beta;
  const double q = 40;
  const ThresholdDecision at_one = wired_uniqueness_threshold(5, beta_dual, q / (1 + q), q);
  CHECK(*at_one.log_q_threshold == doctest::Approx((1 + std::log(4.0)) / beta_dual));
  CHECK(wired_uniqueness_threshold(5, beta_dual, 0.9, 1).verdict == Verdict::fails);
}

TEST_CASE("separation threshold") {
  const SeparationReport s = separation_threshold(5, 5);
  CHECK(std::abs(s.q_star - (2 + 4 * std::log(2.0)) * std::sqrt(5.0)) < 1e-9);
  CHECK(s.q_star == doctest::Approx(10.6719).epsilon(1e-5));
  CHECK(std::abs(s.free_side - s.closed_form) < 1e-9);
  CHECK(std::abs(s.wired_side - s.closed_form) < 1e-9);
  const SeparationReport t = separation_threshold(3, 7);
  CHECK(t.q_star == doctest::Approx((2 + std::log(12.0)) * 11 / std::sqrt(5.0)));
  CHECK(t.q_star == doctest::Approx(22.06).epsilon(1e-3));
  const SeparationReport u = separation_threshold(4, 6);
  CHECK(std::isfinite(u.q_star));
  CHECK(std::abs(u.free_side - u.closed_form) < 1e-9);
  CHECK(std::abs(u.wired_side - u.closed_form) < 1e-9);
  CHECK_THROWS_AS(separation_threshold(4, 4), Inapplicable);
  CHECK_THROWS_AS(separation_threshold(3, 5), SphericalSpec);
  for (int d = 3; d <= 10; ++d) {
    for (int dh = 3; dh <= 10; ++dh) {
      if ((d - 2) * (dh - 2) <= 4) continue;
      const SeparationReport a = separation_threshold(d, dh);
      const SeparationReport b = separation_threshold(dh, d);
      const IsoReport iso = beta_delta_exact(d, dh);
      CAPTURE(d);
      CAPTURE(dh);
      CHECK(a.q_star == doctest::Approx(b.q_star).epsilon(1e-12));
      CHECK(1 - iso.dual_beta < a.b0);
      CHECK(a.b0 < iso.beta);
      CHECK(std::abs(a.free_side - a.closed_form) < 1e-9 * a.closed_form);
      CHECK(std::abs(a.wired_side - a.closed_form) < 1e-9 * a.closed_form);
      CHECK(coexistence_bound(d, dh).q_max < a.q_from_log_threshold);
    }
  }
}

TEST_CASE("separation read as a bound on q overlaps the coexistence range") {
  // Taken literally as q > q_star, {6,6} would give both p_c^f < p_u^w and
  // p_c^f > p_u^w for q in (q_star, 12).
  const SeparationReport s = separation_threshold(6, 6);
  CHECK(s.q_star < coexistence_bound(6, 6).q_max);
  CHECK(s.q_from_log_threshold > coexistence_bound(6, 6).q_max);
  CHECK(separation_threshold(5, 5).q_star > coexistence_bound(5, 5).q_max);
}

TEST_CASE("coexistence bound") {
  CHECK(coexistence_bound(5, 5).q_max == 5);
  CHECK_FALSE(coexistence_bound(5, 5).vacuous);
  CHECK(coexistence_bound(4, 4).q_max == 0);
  CHECK(coexistence_bound(4, 4).vacuous);
  const CoexistenceReport ising = coexistence_bound(6, 4);
  CHECK(ising.q_max == 4);
  CHECK(2 < ising.q_max);
  const double iota = iso_exact(5, 5);
  CHECK(coexistence_condition(4.9, pc_upper_bound(iota), pc_upper_bound(iota)));
  CHECK_FALSE(coexistence_condition(5.1, pc_upper_bound(iota), pc_upper_bound(iota)));
  CHECK(pc_upper_bound(0) == 1);
}

TEST_CASE("robust interval") {
  const RobustInterval r = robust_interval(5, std::sqrt(5.0), 100);
  CHECK(r.exponent_low == doctest::Approx(0.32687).epsilon(1e-4));
  CHECK(r.exponent_high == doctest::Approx(0.51534).epsilon(1e-4));
  CHECK(r.beta_low < r.beta_high);
  CHECK(r.beta_low == doctest::Approx(0.5 * std::log(1 + std::pow(100.0, r.exponent_low))));
  const RobustInterval tiny = robust_interval(5, 1e-12, 7);
  const double limit = 0.5 * std::log(1 + std::pow(7.0, 0.4));
  CHECK(tiny.beta_low == doctest::Approx(limit));
  CHECK(tiny.beta_high == doctest::Approx(limit));
  CHECK_THROWS_AS(robust_interval(4, 0.0, 7), Inapplicable);
  CHECK_THROWS_AS(robust_interval(5, 1, 1), DomainError);
}

TEST_CASE("bounds report") {
  const BoundsReport r = bounds_report(5, 5, 3);
  REQUIRE(r.separation.has_value());
  CHECK(r.coexistence.q_max == 5);
  CHECK(*r.free_wired_differ);
  CHECK(r.robust.has_value());
  const BoundsReport flat = bounds_report(4, 4);
  CHECK(flat.iso.amenable);
  CHECK_FALSE(flat.separation.has_value());
  CHECK(flat.coexistence.vacuous);
  CHECK(*bounds_report(6, 4, 2).free_wired_differ);
  CHECK(to_string(Verdict::undetermined) == "undetermined");
}
