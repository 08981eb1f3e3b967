#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rcm/critical_bounds.hpp"
#include "rcm/errors.hpp"
#include "rcm/graph_json.hpp"
#include "rcm/isoperimetry.hpp"
#include "rcm/rc_simulator.hpp"
#include "rcm/tessellation.hpp"

using json = nlohmann::ordered_json;
using namespace rcm;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitQuality = 3;

// Thrown for bad flag combinations that the library would not see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exit 3 after the output has been written.
struct QualityFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

std::string cell(double x) {
  if (!std::isfinite(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cell(const std::optional<double>& x) { return x ? cell(*x) : ""; }

std::string ratio_text(const Ratio& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double ratio_value(const Ratio& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
    if (used != item.size()) throw UsageError("not a number: '" + item + "'");
    out.push_back(x);
  }
  return out;
}

struct Common {
  int d = 5;
  int codegree = 5;
  std::string out;
};

void add_spec(CLI::App* cmd, Common& c) {
  cmd->add_option("--d", c.d, "vertex degree")->required();
  cmd->add_option("--codegree", c.codegree, "face size")->required();
  cmd->add_option("--out", c.out, "output file (default stdout)");
}

// ---- tessellate -----------------------------------------------------------

struct TessellateArgs {
  Common c;
  int depth = 2;
  std::optional<int> radius;
  bool dual = false;
};

void cmd_tessellate(const TessellateArgs& a) {
  PlanarGraph g = a.radius ? build_ball_patch(a.c.d, a.c.codegree, *a.radius)
                           : build_tessellation({a.c.d, a.c.codegree, a.depth});
  DualPair pair = make_dual_pair(std::move(g));
  emit(graph_to_json(a.dual ? pair.dual : pair.primal).dump() + "\n", a.c.out);
}

// ---- iso --------------------------------------------------------------------

struct IsoArgs {
  Common c;
  int brute = 0;
  int steps = -1;
  std::optional<int> depth;
  int animals = 0;
  std::string trace_out;
  std::string brute_out;
};

json iso_json(const IsoReport& r) {
  return {{"d", r.degree},
          {"codegree", r.codegree},
          {"amenable", r.amenable},
          {"iota", number(r.iota)},
          {"beta", number(r.beta)},
          {"delta", number(r.delta)},
          {"dual_iota", number(r.dual_iota)},
          {"dual_beta", number(r.dual_beta)},
          {"dual_delta", number(r.dual_delta)},
          {"beta_closed_form", number(r.beta_closed_form)},
          {"beta_plus_dual_delta", number(r.beta + r.dual_delta)}};
}

void cmd_iso(const IsoArgs& a) {
  const int d = a.c.d, dh = a.c.codegree;
  json out = iso_json(beta_delta_exact(d, dh));

  if (a.brute > 0) {
    const PlanarGraph g = build_ball_patch(d, dh, std::max(0, a.brute - 1));
    const BruteForceResult r = brute_force_iso(g, 0, a.brute);
    json by_size = json::array();
    std::string csv = "size,min_ratio,min_ratio_value\n";
    for (int n = 1; n <= a.brute; ++n) {
      by_size.push_back(ratio_text(r.best_by_size[n]));
      csv += std::to_string(n) + "," + ratio_text(r.best_by_size[n]) + "," +
             cell(ratio_value(r.best_by_size[n])) + "\n";
    }
    out["brute_force"] = {{"max_size", a.brute},
                          {"min_ratio", ratio_text(r.min_ratio)},
                          {"min_ratio_value", number(ratio_value(r.min_ratio))},
                          {"at_least_iota", at_least_iota(r.min_ratio, d, dh)},
                          {"argmin", r.argmin},
                          {"best_by_size", by_size},
                          {"sets_enumerated", r.sets_enumerated},
                          {"truncated", r.truncated}};
    if (!a.brute_out.empty()) emit(csv, a.brute_out);
  }

  if (a.steps >= 0) {
    const int depth = a.depth.value_or(a.steps + 2);
    const DualPair pair = make_dual_pair(build_tessellation({d, dh, depth}));
    const std::vector<int> k0{central_vertex(pair.primal)};
    const IterationTrace t = peres_iterate(pair, k0, a.steps);
    json steps = json::array();
    std::string csv = "n,|K_n|,|∂K_n|,ratio,kappa_n\n";
    for (const IterationStep& s : t.steps) {
      const double ratio = static_cast<double>(s.primal_boundary) / s.primal_set.size();
      steps.push_back({{"n", s.n},
                       {"size", s.primal_set.size()},
                       {"boundary", s.primal_boundary},
                       {"ratio", number(ratio)},
                       {"kappa", number(s.kappa)},
                       {"dual_size", s.dual_set.size()},
                       {"dual_boundary", s.dual_boundary},
                       {"lambda", s.dual_set.empty() ? json(nullptr) : number(s.lambda)},
                       {"slack", number(s.slack)},
                       {"contraction_holds",
                        s.contraction_holds ? json(*s.contraction_holds) : json(nullptr)}});
      csv += std::to_string(s.n) + "," + std::to_string(s.primal_set.size()) + "," +
             std::to_string(s.primal_boundary) + "," + cell(ratio) + "," + cell(s.kappa) + "\n";
    }
    out["iteration"] = {{"depth", depth},
                        {"a", number(t.a)},
                        {"frontier_contact", t.frontier_contact},
                        {"steps", steps}};
    if (!a.trace_out.empty()) emit(csv, a.trace_out);
  }

  if (a.animals > 0) {
    const PlanarGraph g = build_ball_patch(d, dh, std::max(0, a.animals - 1));
    const AnimalCounts r = animal_counts(g, 0, a.animals);
    json bound = json::array();
    for (double x : r.log_bound) bound.push_back(number(x));
    out["animals"] = {{"counts", r.counts},
                      {"log_bound", bound},
                      {"bound_holds", r.bound_holds},
                      {"growth_below_e_d_minus_1", r.growth_below_e_d_minus_1}};
  }
  emit(out.dump(2) + "\n", a.c.out);
}

// ---- bounds -----------------------------------------------------------------

struct BoundsArgs {
  Common c;
  std::string p;
  std::string q;
  std::string table_out;
};

json decision_json(int degree, double beta, double p, double q, bool wired) {
  try {
    const ThresholdDecision t = wired ? wired_uniqueness_threshold(degree, beta, p, q)
                                      : free_death_threshold(degree, beta, p, q);
    return {{"verdict", to_string(t.verdict)},
            {"b", number(t.b)},
            {"log_q", number(t.log_q)},
            {"log_q_threshold", number(t.log_q_threshold)},
            {"minimal_q", number(t.minimal_q)},
            {"maximal_q", number(t.maximal_q)}};
  } catch (const Inapplicable&) {
    return {{"verdict", "inapplicable"}};
  }
}

std::string decision_cells(const json& j) {
  auto get = [&](const char* key) -> std::string {
    if (!j.contains(key) || j[key].is_null()) return "";
    return cell(j[key].get<double>());
  };
  return j["verdict"].get<std::string>() + "," + get("log_q_threshold") + "," + get("minimal_q") +
         "," + get("maximal_q");
}

void cmd_bounds(const BoundsArgs& a) {
  const int d = a.c.d, dh = a.c.codegree;
  const std::vector<double> ps = parse_list(a.p);
  const std::vector<double> qs = parse_list(a.q);
  std::optional<double> single_q;
  if (qs.size() == 1) single_q = qs.front();
  const BoundsReport r = bounds_report(d, dh, single_q);

  json out = iso_json(r.iso);
  if (r.separation) {
    out["q_separation"] = number(r.separation->q_star);
    out["q_separation_log_reading"] = number(r.separation->q_from_log_threshold);
    out["b0"] = number(r.separation->b0);
    out["separation_identity"] = {{"free_side", number(r.separation->free_side)},
                                  {"wired_side", number(r.separation->wired_side)},
                                  {"closed_form", number(r.separation->closed_form)}};
  } else {
    out["q_separation"] = nullptr;
  }
  out["q_coexistence"] = number(r.coexistence.q_max);
  out["coexistence_vacuous"] = r.coexistence.vacuous;
  out["pc_upper_bound"] = number(pc_upper_bound(r.iso.iota));
  out["dual_pc_upper_bound"] = number(pc_upper_bound(r.iso.dual_iota));
  if (r.q) {
    out["q"] = number(*r.q);
    out["self_dual_point"] = number(r.self_dual);
    out["free_wired_differ"] = *r.free_wired_differ;
    if (r.robust) {
      out["robust_interval"] = {{"exponent_low", number(r.robust->exponent_low)},
                                {"exponent_high", number(r.robust->exponent_high)},
                                {"beta_low", number(r.robust->beta_low)},
                                {"beta_high", number(r.robust->beta_high)}};
    } else {
      out["robust_interval"] = nullptr;
    }
  }

  if (!ps.empty()) {
    if (qs.empty()) throw UsageError("--p needs --q");
    if (r.iso.amenable) throw Inapplicable("threshold tables need a nonamenable spec");
    json table = json::array();
    std::string csv =
        "p,q,b,dual_p,free_verdict,free_log_q_threshold,free_minimal_q,free_maximal_q,"
        "wired_verdict,wired_log_q_threshold,wired_minimal_q,wired_maximal_q\n";
    for (double p : ps) {
      for (double q : qs) {
        const json f = decision_json(d, r.iso.beta, p, q, false);
        const json w = decision_json(dh, r.iso.dual_beta, p, q, true);
        const ModelParams m = ModelParams::from_p(p, q);
        const double pd = dual_parameter(p, q);
        table.push_back({{"p", number(p)},
                         {"q", number(q)},
                         {"b", number(m.b)},
                         {"dual_p", number(pd)},
                         {"free", f},
                         {"wired", w}});
        csv += cell(p) + "," + cell(q) + "," + cell(m.b) + "," + cell(pd) + "," +
               decision_cells(f) + "," + decision_cells(w) + "\n";
      }
    }
    out["table"] = table;
    if (!a.table_out.empty()) emit(csv, a.table_out);
  }
  emit(out.dump(2) + "\n", a.c.out);
}

// ---- sample / sweep ---------------------------------------------------------

enum class Event { connectivity, edge };

struct Point {
  std::string graph = "ball";
  int d = 5;
  int codegree = 5;
  int radius = 1;
  BoundaryKind bc = BoundaryKind::free;
  double p = 0.5;
  double q = 2;
  double s = 0;
  std::optional<int> origin;
  std::vector<int> boundary;
  bool has_boundary = false;
  Event event = Event::connectivity;
  int edge = 0;
};

bool uses_s(BoundaryKind k) { return k == BoundaryKind::weakened || k == BoundaryKind::apex; }

BoundaryCondition condition(const Point& pt) {
  switch (pt.bc) {
    case BoundaryKind::free:
      return BoundaryCondition::free();
    case BoundaryKind::wired:
      return BoundaryCondition::wired();
    case BoundaryKind::weakened:
      return BoundaryCondition::weakened(pt.s);
    case BoundaryKind::apex:
      return BoundaryCondition::apex(pt.s);
  }
  return BoundaryCondition::free();
}

struct Built {
  RCInstance instance;
  int origin = 0;
};

Built build_instance(const Point& pt, const PlanarGraph* ball_graph) {
  Built b;
  if (pt.graph == "ball") {
    b.instance = ball_instance(*ball_graph, 0, pt.radius, condition(pt), pt.p, pt.q);
    b.origin = pt.origin.value_or(0);
  } else if (pt.graph == "triangle") {
    b.instance = triangle_instance(condition(pt), pt.p, pt.q,
                                   pt.has_boundary ? pt.boundary : std::vector<int>{2});
    b.origin = pt.origin.value_or(0);
  } else if (pt.graph == "path") {
    const int n = std::max(2, pt.radius * 2 + 1);
    b.instance = path_instance(n, condition(pt), pt.p, pt.q);
    b.origin = pt.origin.value_or(n / 2);
  } else {
    throw UsageError("unknown graph '" + pt.graph + "' (ball, triangle, path)");
  }
  return b;
}

struct Outcome {
  Estimate estimate;
  bool exact_enumeration = false;
  bool no_coalescence = false;
};

Outcome evaluate(const Point& pt, const Built& b, bool exact, std::uint64_t samples,
                 std::uint64_t seed, unsigned threads, const SamplerOptions& options) {
  Outcome o;
  if (pt.event == Event::edge && (pt.edge < 0 || pt.edge >= b.instance.num_edges())) {
    throw UsageError("edge " + std::to_string(pt.edge) + " is not in the instance");
  }
  if (exact) {
    const ExactResult r = exact_rc(b.instance, b.origin);
    const Rational& v =
        pt.event == Event::edge ? r.edge_marginals[pt.edge] : *r.connectivity;
    o.estimate.estimate = o.estimate.ci_lo = o.estimate.ci_hi = v.convert_to<double>();
    o.estimate.exact = true;
    o.exact_enumeration = true;
    return o;
  }
  try {
    o.estimate = pt.event == Event::edge
                     ? estimate_edge(b.instance, pt.edge, samples, seed, threads, options)
                     : estimate_connectivity(b.instance, b.origin, samples, seed, threads, options);
  } catch (const NoCoalescence&) {
    o.no_coalescence = true;
    o.estimate.n = samples;
    o.estimate.seed = seed;
  }
  return o;
}

Event parse_event(const std::string& text, int& edge) {
  if (text == "connectivity") return Event::connectivity;
  if (text.rfind("edge:", 0) == 0) {
    try {
      edge = std::stoi(text.substr(5));
    } catch (const std::exception&) {
      throw UsageError("bad event '" + text + "'");
    }
    return Event::edge;
  }
  throw UsageError("bad event '" + text + "' (connectivity or edge:<id>)");
}

struct SampleArgs {
  Common c;
  int radius = 1;
  std::string bc = "free";
  double p = 0.5;
  double q = 2;
  double s = 0;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  std::string graph = "ball";
  std::string event = "connectivity";
  std::optional<int> origin;
  bool exact = false;
  unsigned threads = 0;
  int max_doublings = 20;
};

void cmd_sample(const SampleArgs& a) {
  Point pt;
  pt.graph = a.graph;
  pt.d = a.c.d;
  pt.codegree = a.c.codegree;
  pt.radius = a.radius;
  pt.bc = parse_boundary_kind(a.bc);
  pt.p = a.p;
  pt.q = a.q;
  pt.s = a.s;
  pt.origin = a.origin;
  pt.event = parse_event(a.event, pt.edge);
  std::optional<PlanarGraph> g;
  if (pt.graph == "ball") g = build_ball_patch(pt.d, pt.codegree, pt.radius);
  const Built b = build_instance(pt, g ? &*g : nullptr);
  const Outcome o = evaluate(pt, b, a.exact, a.samples, a.seed, a.threads, {a.max_doublings});

  json out = {{"graph", pt.graph}};
  if (pt.graph == "ball") {
    out["d"] = pt.d;
    out["codegree"] = pt.codegree;
  }
  out["radius"] = pt.radius;
  out["bc"] = to_string(pt.bc);
  out["p"] = number(pt.p);
  out["q"] = number(pt.q);
  out["s"] = uses_s(pt.bc) ? number(pt.s) : json(nullptr);
  out["event"] = a.event;
  out["origin"] = b.origin;
  out["vertices"] = b.instance.num_vertices;
  out["edges"] = b.instance.num_edges();
  out["mode"] = a.exact ? "exact" : "sample";
  if (o.no_coalescence) {
    out["estimate"] = out["ci_lo"] = out["ci_hi"] = nullptr;
    out["no_coalescence"] = true;
  } else {
    out["estimate"] = number(o.estimate.estimate);
    out["ci_lo"] = number(o.estimate.ci_lo);
    out["ci_hi"] = number(o.estimate.ci_hi);
  }
  out["n"] = a.exact ? json(nullptr) : json(a.samples);
  out["seed"] = a.exact ? json(nullptr) : json(a.seed);
  emit(out.dump(2) + "\n", a.c.out);
  if (o.no_coalescence) throw QualityFailure("sampler did not coalesce");
}

struct SweepArgs {
  std::string config;
  std::string out;
  bool resume = false;
};

template <typename T>
std::vector<T> list_or_single(const json& cfg, const char* key, std::vector<T> fallback) {
  if (!cfg.contains(key)) return fallback;
  const json& v = cfg[key];
  std::vector<T> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(x.get<T>());
  } else {
    out.push_back(v.get<T>());
  }
  if (out.empty()) throw UsageError(std::string("grid '") + key + "' is empty");
  return out;
}

void cmd_sweep(const SweepArgs& a) {
  std::ifstream in(a.config);
  if (!in) throw UsageError("cannot read " + a.config);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
  try {
    Point base;
    base.graph = cfg.value("graph", std::string("ball"));
    base.d = cfg.value("d", 5);
    base.codegree = cfg.value("codegree", 5);
    if (cfg.contains("origin")) base.origin = cfg["origin"].get<int>();
    if (cfg.contains("boundary")) {
      base.boundary = cfg["boundary"].get<std::vector<int>>();
      base.has_boundary = true;
    }
    base.event = parse_event(cfg.value("event", std::string("connectivity")), base.edge);
    const auto radii = list_or_single<int>(cfg, "radii", {1});
    const auto bcs = list_or_single<std::string>(cfg, "bc", {"free"});
    const auto ps = list_or_single<double>(cfg, "p", {0.5});
    const auto qs = list_or_single<double>(cfg, "q", {2.0});
    const auto ss = list_or_single<double>(cfg, "s", {0.0});
    const auto samples = cfg.value("samples", std::uint64_t{1000});
    const auto seed = cfg.value("seed", std::uint64_t{1});
    const bool exact = cfg.value("mode", std::string("sample")) == "exact";
    const double max_failure = cfg.value("max_no_coalescence_fraction", 0.0);
    const unsigned threads = cfg.value("threads", 0U);
    const SamplerOptions options{cfg.value("max_doublings", 20)};
    std::string out_path = a.out.empty() ? cfg.value("out", std::string()) : a.out;

    std::vector<BoundaryKind> kinds;
    for (const auto& t : bcs) kinds.push_back(parse_boundary_kind(t));
    for (double x : ss) {
      if (!(x >= 0 && x <= 1)) throw DomainError("s grid values must lie in [0,1]");
    }
    int max_radius = 0;
    for (int r : radii) {
      if (r < 0) throw DomainError("radii must be nonnegative");
      max_radius = std::max(max_radius, r);
    }
    std::optional<PlanarGraph> g;
    if (base.graph == "ball") g = build_ball_patch(base.d, base.codegree, max_radius);

    std::vector<Point> grid;
    for (int r : radii) {
      for (BoundaryKind k : kinds) {
        for (double p : ps) {
          for (double q : qs) {
            const std::vector<double> s_values = uses_s(k) ? ss : std::vector<double>{0.0};
            for (double s : s_values) {
              Point pt = base;
              pt.radius = r;
              pt.bc = k;
              pt.p = p;
              pt.q = q;
              pt.s = s;
              grid.push_back(pt);
            }
          }
        }
      }
    }
    // Validate every instance before any output is written.
    for (const Point& pt : grid) build_instance(pt, g ? &*g : nullptr);

    const std::string header = "d,dcode,radius,bc,p,q,s,estimate,ci_lo,ci_hi,n,seed\n";
    std::size_t done = 0;
    const bool to_file = !out_path.empty() && out_path != "-";
    if (a.resume && to_file) {
      std::ifstream prev(out_path);
      std::string line;
      std::size_t lines = 0;
      while (std::getline(prev, line)) ++lines;
      done = lines > 0 ? lines - 1 : 0;
      if (done > grid.size()) throw UsageError("existing output has more rows than the grid");
    }
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (to_file) {
      file.open(out_path, done > 0 ? std::ios::app | std::ios::binary : std::ios::trunc | std::ios::binary);
      if (!file) throw UsageError("cannot write " + out_path);
      os = &file;
    }
    if (done == 0) *os << header << std::flush;

    std::size_t failures = 0;
    for (std::size_t i = done; i < grid.size(); ++i) {
      const Point& pt = grid[i];
      const Built b = build_instance(pt, g ? &*g : nullptr);
      const Outcome o = evaluate(pt, b, exact, samples, seed, threads, options);
      const bool ball = pt.graph == "ball";
      std::string row = (ball ? std::to_string(pt.d) : "") + "," +
                        (ball ? std::to_string(pt.codegree) : "") + "," + std::to_string(pt.radius) +
                        "," + to_string(pt.bc) + "," + cell(pt.p) + "," + cell(pt.q) + "," +
                        (uses_s(pt.bc) ? cell(pt.s) : "") + ",";
      if (o.no_coalescence) {
        ++failures;
        row += ",,,";
      } else {
        row += cell(o.estimate.estimate) + "," + cell(o.estimate.ci_lo) + "," +
               cell(o.estimate.ci_hi) + ",";
      }
      row += o.exact_enumeration ? "," : std::to_string(samples) + "," + std::to_string(seed);
      *os << row << "\n" << std::flush;
      if (o.no_coalescence) std::cerr << "row " << i << ": no coalescence\n";
    }
    const std::size_t ran = grid.size() - done;
    if (ran > 0 && static_cast<double>(failures) > max_failure * static_cast<double>(ran)) {
      throw QualityFailure(std::to_string(failures) + " of " + std::to_string(ran) +
                           " rows did not coalesce");
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-cluster models on {d, codegree} tessellations"};
  app.require_subcommand(1);

  TessellateArgs tess;
  auto* t = app.add_subcommand("tessellate", "build a patch and print its graph JSON");
  add_spec(t, tess.c);
  t->add_option("--depth", tess.depth, "face rings around the seed face");
  t->add_option("--radius", tess.radius, "grow a ball patch of this radius instead");
  t->add_flag("--dual", tess.dual, "print the dual patch");

  IsoArgs iso;
  auto* i = app.add_subcommand("iso", "isoperimetric constants and traces");
  add_spec(i, iso.c);
  i->add_option("--brute", iso.brute, "brute-force minimum up to this set size");
  i->add_option("--brute-out", iso.brute_out, "CSV of per-size minima");
  i->add_option("--steps", iso.steps, "iteration steps from the central vertex");
  i->add_option("--depth", iso.depth, "face-ring depth for the iteration patch");
  i->add_option("--trace-out", iso.trace_out, "CSV iteration trace");
  i->add_option("--animals", iso.animals, "count bond animals up to this size");

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "critical-value bounds");
  add_spec(b, bounds.c);
  b->add_option("--p", bounds.p, "comma-separated p grid");
  b->add_option("--q", bounds.q, "comma-separated q grid (one value adds q-specific fields)");
  b->add_option("--table-out", bounds.table_out, "CSV of the p x q decision table");

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "estimate a connectivity or edge probability");
  s->add_option("--d", sample.c.d, "vertex degree");
  s->add_option("--codegree", sample.c.codegree, "face size");
  s->add_option("--out", sample.c.out, "output file (default stdout)");
  s->add_option("--graph", sample.graph, "ball, triangle or path");
  s->add_option("--radius", sample.radius, "ball radius (path: 2r+1 vertices)");
  s->add_option("--bc", sample.bc, "free, wired, weakened or apex");
  s->add_option("--p", sample.p, "edge probability");
  s->add_option("--q", sample.q, "cluster weight");
  s->add_option("--s", sample.s, "boundary edge probability (weakened, apex)");
  s->add_option("--samples", sample.samples, "number of exact draws");
  s->add_option("--seed", sample.seed, "random seed");
  s->add_option("--event", sample.event, "connectivity or edge:<id>");
  s->add_option("--origin", sample.origin, "origin vertex of the instance");
  s->add_flag("--exact", sample.exact, "enumerate instead of sampling");
  s->add_option("--threads", sample.threads, "worker threads (0 = all cores)");
  s->add_option("--max-doublings", sample.max_doublings, "coalescence cap, log2 sweeps");

  SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "run a grid from a JSON config and write CSV");
  w->add_option("config", sweep.config, "sweep config file")->required();
  w->add_option("--out", sweep.out, "output CSV (overrides the config)");
  w->add_flag("--resume", sweep.resume, "append to an existing output, skipping finished rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (t->parsed()) cmd_tessellate(tess);
    if (i->parsed()) cmd_iso(iso);
    if (b->parsed()) cmd_bounds(bounds);
    if (s->parsed()) cmd_sample(sample);
    if (w->parsed()) cmd_sweep(sweep);
  } catch (const QualityFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitQuality;
  } catch (const NoCoalescence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitQuality;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
