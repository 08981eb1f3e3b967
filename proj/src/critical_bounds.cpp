#include "rcm/critical_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "rcm/errors.hpp"

namespace rcm {

double h(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("h(x) needs 0 <= x < 1, got " + std::to_string(x));
  return x / (1.0 - x);
}

double h_inverse(double y) {
  if (!(y >= 0.0)) throw DomainError("h^{-1}(y) needs y >= 0");
  return y / (1.0 + y);
}

double dual_parameter(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
  if (!(q >= 1.0)) throw DomainError("q must be at least 1");
  return (1.0 - p) * q / (p + (1.0 - p) * q);
}

double self_dual_point(double q) {
  if (!(q >= 1.0)) throw DomainError("q must be at least 1");
  const double s = std::sqrt(q);
  return s / (s + 1.0);
}

double pcpu_partner(double q, double known) {
  if (!(q >= 1.0)) throw DomainError("q must be at least 1");
  if (!(known > 0.0 && known < 1.0)) throw DomainError("critical value must lie in (0,1)");
  return h_inverse(q / h(known));
}

double p_from_beta(double beta) {
  if (!(beta >= 0.0)) throw DomainError("beta must be nonnegative");
  return -std::expm1(-2.0 * beta);
}

double beta_from_p(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("p must lie in [0,1)");
  return -0.5 * std::log1p(-p);
}

namespace {

std::optional<double> b_value(double p, double q) {
  if (q > 1.0 && p > 0.0 && p < 1.0) return std::log(p / (1.0 - p)) / std::log(q);
  return std::nullopt;
}

}  // namespace

ModelParams ModelParams::from_p(double p, double q) {
  ModelParams m;
  m.p = p;
  m.q = q;
  m.beta = p < 1.0 ? beta_from_p(p) : INFINITY;
  m.b = b_value(p, q);
  if (m.b) m.b_plus = std::max(*m.b, 0.0);
  return m;
}

ModelParams ModelParams::from_beta(double beta, double q) {
  ModelParams m = from_p(p_from_beta(beta), q);
  m.beta = beta;
  return m;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

namespace {

Verdict compare_strict(double lhs, double rhs) {
  if (lhs > rhs) return Verdict::holds;
  if (lhs == rhs) return Verdict::undetermined;
  return Verdict::fails;
}

}  // namespace

// With L = log q and x = log(p/(1-p)) the condition L > c / (β - max(x/L, 0))
// becomes L > (c + max(x, 0)) / β, which also implies b < β.
ThresholdDecision free_death_threshold(int degree, double beta_graph, double p, double q) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0,1)");
  if (!(q >= 1.0)) throw DomainError("q must be at least 1");
  if (!(beta_graph > 0.0 && beta_graph <= 1.0)) throw DomainError("beta must lie in (0,1]");
  const double c = 1.0 + std::log(degree - 1.0);
  const double x = std::log(p / (1.0 - p));
  ThresholdDecision out;
  out.log_q = std::log(q);
  out.minimal_q = std::exp((c + std::max(x, 0.0)) / beta_graph);
  out.b = b_value(p, q);
  if (!out.b) {
    out.verdict = Verdict::fails;
    return out;
  }
  if (*out.b >= beta_graph) {
    throw Inapplicable("b = " + std::to_string(*out.b) + " is not below beta = " +
                       std::to_string(beta_graph));
  }
  out.log_q_threshold = c / (beta_graph - std::max(*out.b, 0.0));
  out.verdict = compare_strict(out.log_q, *out.log_q_threshold);
  return out;
}

ThresholdDecision wired_uniqueness_threshold(int codegree, double beta_dual, double p, double q) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0,1)");
  if (!(q >= 1.0)) throw DomainError("q must be at least 1");
  const double c = 1.0 + std::log(codegree - 1.0);
  ThresholdDecision out;
  out.log_q = std::log(q);
  out.b = b_value(p, q);
  // With x = log(p/(1-p)) and L = log q the condition reads c/β̂ < L when
  // L <= x and L (1 - β̂) < x - c when L > x, so at fixed p it holds on the
  // window c/β̂ < L < (x - c)/(1 - β̂), which is empty unless x > c/β̂.
  const double x = std::log(p / (1.0 - p));
  if (x > c / beta_dual) {
    out.minimal_q = std::exp(c / beta_dual);
    out.maximal_q = beta_dual < 1.0 ? std::exp((x - c) / (1.0 - beta_dual)) : INFINITY;
  }
  const double bd = beta_dual;
  if (!out.b) {
    out.verdict = Verdict::fails;
    return out;
  }
  if (*out.b <= 1.0 - bd) {
    throw Inapplicable("b = " + std::to_string(*out.b) + " is not above 1 - beta = " +
                       std::to_string(1.0 - bd));
  }
  out.log_q_threshold = c / (std::min(*out.b, 1.0) - 1.0 + bd);
  out.verdict = compare_strict(out.log_q, *out.log_q_threshold);
  return out;
}

SeparationReport separation_threshold(int degree, int codegree) {
  classify(degree, codegree);
  const double d = degree;
  const double c = codegree;
  const double s = d * c - 2 * d - 2 * c;
  if (s <= 0) {
    throw Inapplicable("d*codegree - 2d - 2codegree = " + std::to_string(s) + " <= 0");
  }
  const double cg = 1.0 + std::log(d - 1.0);
  const double cd = 1.0 + std::log(c - 1.0);
  const double beta_g = beta_closed_form(degree, codegree);
  const double beta_d = beta_closed_form(codegree, degree);
  SeparationReport r;
  r.b0 = (cg * (1.0 - beta_d) + cd * beta_g) / (cg + cd);
  r.free_side = cg / (beta_g - std::max(r.b0, 0.0));
  r.wired_side = cd / (std::min(r.b0, 1.0) - 1.0 + beta_d);
  r.closed_form = (2.0 + std::log((d - 1.0) * (c - 1.0))) * (d * c - d - c) /
                  std::sqrt((d - 2.0) * (c - 2.0) * s);
  r.q_star = r.closed_form;
  r.q_from_log_threshold = std::exp(r.closed_form);
  return r;
}

CoexistenceReport coexistence_bound(int degree, int codegree) {
  if (degree < 3 || codegree < 3) throw DegenerateSpec("degree and codegree must be at least 3");
  CoexistenceReport r;
  r.q_max = static_cast<double>(degree) * codegree - 2.0 * degree - 2.0 * codegree;
  r.vacuous = r.q_max <= 1.0;
  return r;
}

bool coexistence_condition(double q, double pc_graph, double pc_dual) {
  return h(pc_graph) * h(pc_dual) < 1.0 / q;
}

double pc_upper_bound(double iota) {
  if (!(iota >= 0.0)) throw DomainError("iota must be nonnegative");
  return 1.0 / (1.0 + iota);
}

RobustInterval robust_interval(int degree, double iota, double q) {
  if (iota == 0.0) throw Inapplicable("no robust-interval statement for amenable graphs");
  if (!(iota > 0.0)) throw DomainError("iota must be positive");
  if (!(q > 1.0)) throw DomainError("q must exceed 1");
  if (!(degree > iota / 2.0)) throw DomainError("need d > iota/2");
  RobustInterval r;
  r.exponent_low = 2.0 / (degree + iota / 2.0);
  r.exponent_high = 2.0 / (degree - iota / 2.0);
  r.beta_low = 0.5 * std::log1p(std::pow(q, r.exponent_low));
  r.beta_high = 0.5 * std::log1p(std::pow(q, r.exponent_high));
  return r;
}

BoundsReport bounds_report(int degree, int codegree, std::optional<double> q) {
  BoundsReport r;
  r.iso = beta_delta_exact(degree, codegree);
  if (!r.iso.amenable) r.separation = separation_threshold(degree, codegree);
  r.coexistence = coexistence_bound(degree, codegree);
  r.q = q;
  if (q) {
    r.self_dual = self_dual_point(*q);
    if (!r.iso.amenable && *q > 1.0) r.robust = robust_interval(degree, r.iso.iota, *q);
    r.free_wired_differ = !r.coexistence.vacuous && *q < r.coexistence.q_max;
  }
  return r;
}

}  // namespace rcm
