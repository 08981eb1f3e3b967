#pragma once

#include <optional>
#include <string>

#include "rcm/isoperimetry.hpp"

namespace rcm {

/// h(x) = x / (1 - x) on [0, 1). Throws DomainError outside.
double h(double x);
/// Inverse of h on [0, ∞).
double h_inverse(double y);

/// p' = (1-p)q / (p + (1-p)q), the parameter of the dual measure.
double dual_parameter(double p, double q);

/// sqrt(q) / (sqrt(q) + 1), the fixed point of dual_parameter(., q).
double self_dual_point(double q);

/// Partner of a critical value under h(x) h(y) = q, i.e. h^{-1}(q / h(x)).
/// Throws DomainError unless 0 < known < 1 and q >= 1.
double pcpu_partner(double q, double known);

/// p = 1 - exp(-2β) and its inverse β = -log(1 - p)/2.
double p_from_beta(double beta);
double beta_from_p(double p);

/// Edge probability, cluster weight and the derived quantities.
struct ModelParams {
  double p = 0;
  double q = 1;
  double beta = 0;
  std::optional<double> b;  // log(p/(1-p)) / log q, defined for q > 1, 0 < p < 1
  std::optional<double> b_plus;

  static ModelParams from_p(double p, double q);
  static ModelParams from_beta(double beta, double q);
};

/// Strict inequalities only; equality at the boundary is left undetermined.
enum class Verdict { holds, fails, undetermined };

std::string to_string(Verdict v);

struct ThresholdDecision {
  Verdict verdict = Verdict::fails;
  std::optional<double> b;
  double log_q = 0;
  /// Right-hand side the log q condition is compared with at this p and q.
  std::optional<double> log_q_threshold;
  /// Open range of q on which the condition holds at this p; empty
  /// minimal_q when no q works. maximal_q is set only where the range is
  /// bounded above (wired uniqueness).
  std::optional<double> minimal_q;
  std::optional<double> maximal_q;
};

/// No infinite free cluster: b < β(G) and log q > (1 + log(d-1)) / (β(G) - b⁺).
/// Throws Inapplicable when q > 1 and b >= β(G).
ThresholdDecision free_death_threshold(int degree, double beta_graph, double p, double q);

/// Unique infinite wired cluster: b > 1 - β(d̂G) and
/// log q > (1 + log(d̂-1)) / (b∧1 - 1 + β(d̂G)).
/// Throws Inapplicable when q > 1 and b <= 1 - β(d̂G).
ThresholdDecision wired_uniqueness_threshold(int codegree, double beta_dual, double p, double q);

struct SeparationReport {
  /// (2 + log((d-1)(d̂-1)))(dd̂-d-d̂) / sqrt((d-2)(d̂-2)(dd̂-2d-2d̂)).
  double q_star = 0;
  /// exp(q_star). The free and wired conditions bound log q, so this is the
  /// q above which both hold at b = b0.
  double q_from_log_threshold = 0;
  double b0 = 0;
  /// The three expressions that coincide at b = b0.
  double free_side = 0;   // (1 + log(d-1)) / (β(G) - b0⁺)
  double wired_side = 0;  // (1 + log(d̂-1)) / (b0∧1 - 1 + β(d̂G))
  double closed_form = 0;
};

/// Threshold for p_c^free(q) > p_u^wired(q). Throws Inapplicable
/// when d d̂ - 2d - 2d̂ <= 0.
SeparationReport separation_threshold(int degree, int codegree);

struct CoexistenceReport {
  double q_max = 0;  // d d̂ - 2d - 2d̂
  bool vacuous = false;  // q_max <= 1
};

CoexistenceReport coexistence_bound(int degree, int codegree);

/// h(p_c(G)) h(p_c(d̂G)) < 1/q, with caller-supplied bond percolation
/// thresholds.
bool coexistence_condition(double q, double pc_graph, double pc_dual);

/// Upper bound 1 / (1 + ι) on the bond percolation threshold.
double pc_upper_bound(double iota);

struct RobustInterval {
  double exponent_low = 0;   // 2 / (d + ι/2)
  double exponent_high = 0;  // 2 / (d - ι/2)
  double beta_low = 0;
  double beta_high = 0;
};

/// e^{2β} - 1 ∈ [q^{2/(d+ι/2)}, q^{2/(d-ι/2)}]. Throws Inapplicable for ι = 0
/// and DomainError unless q > 1 and d > ι/2.
RobustInterval robust_interval(int degree, double iota, double q);

/// Everything the bounds tables report for one (d, d̂), optionally at one q.
struct BoundsReport {
  IsoReport iso;
  std::optional<SeparationReport> separation;
  CoexistenceReport coexistence;
  std::optional<double> q;
  std::optional<double> self_dual;
  std::optional<RobustInterval> robust;
  /// q < d d̂ - 2d - 2d̂, so FRC != WRC on an interval of p.
  std::optional<bool> free_wired_differ;
};

BoundsReport bounds_report(int degree, int codegree, std::optional<double> q = std::nullopt);

}  // namespace rcm
