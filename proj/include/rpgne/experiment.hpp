#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rpgne/builtin_games.hpp"
#include "rpgne/config.hpp"
#include "rpgne/dynamics.hpp"
#include "rpgne/graph.hpp"
#include "rpgne/oracle.hpp"
#include "rpgne/schedules.hpp"

namespace rpgne {

inline constexpr int kSummarySchemaVersion = 1;
inline constexpr const char* kOutputDirEnv = "RPGNE_OUTPUT_DIR";

/// A config resolved against the model: everything needed to integrate.
struct ResolvedExperiment {
  ExperimentConfig config;
  GameModel game;
  ConstraintSet constraints;
  std::optional<CommGraph> graph;
  ScheduleSet schedules;
  LipschitzEstimates bounds;
  double b1_used = 0.0;  // constants the derived step size was built with
  double b2_used = 0.0;
  SwarmState initial;
};

namespace detail {

inline Matrix to_matrix(const std::vector<std::vector<double>>& rows, const char* what) {
  if (rows.empty()) return Matrix();
  const size_t cols = rows.front().size();
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(cols));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw InvalidArgument(std::string(what) + ": ragged matrix");
    for (size_t j = 0; j < cols; ++j) m(Index(i), Index(j)) = rows[i][j];
  }
  return m;
}

inline Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

inline std::vector<double> to_std(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline CommGraph build_graph(const GraphSpec& g) {
  if (!g.named.empty()) return CommGraph::named(g.named);
  std::vector<Edge> edges;
  for (const auto& [a, b, w] : g.edges) {
    if (a < 1 || b < 1 || a > g.n || b > g.n)
      throw InvalidArgument("graph: edge endpoints are 1-based and must be <= n");
    edges.push_back({a - 1, b - 1, w});
  }
  return CommGraph::from_edges(g.n, edges);
}

inline GameModel build_game(const GameSpec& g, const std::optional<CommGraph>& graph) {
  if (g.builtin.empty()) {
    return GameModel::quadratic(to_matrix(g.m_matrix, "game.M"), to_vector(g.m_vector));
  }
  if (g.builtin == "five-player") return builtin::five_player_game();
  if (g.builtin == "robot-swarm" || g.builtin == "consensus") {
    if (!graph) throw InvalidArgument("game '" + g.builtin + "' needs a graph");
    if (g.builtin == "consensus") return builtin::consensus_game(*graph);
    const Vector a = g.coefficients.empty() ? builtin::robot_swarm_coefficients()
                                            : to_vector(g.coefficients);
    return builtin::robot_swarm_game(a, *graph);
  }
  throw InvalidArgument("unknown builtin game '" + g.builtin + "'");
}

inline ConstraintSet build_constraints(const ConstraintSpec& c, Index n,
                                       const std::optional<CommGraph>& graph) {
  if (c.builtin == "five-player") return builtin::five_player_constraints(true);
  if (c.builtin == "five-player-noshared") return builtin::five_player_constraints(false);
  if (c.builtin == "none") return ConstraintSet::unconstrained(n);
  if (c.builtin == "robot-swarm") {
    if (!graph) throw InvalidArgument("constraints 'robot-swarm' need a graph");
    return builtin::robot_swarm_constraints(*graph, c.lo.value_or(0.0), c.hi.value_or(10.0),
                                            c.max_gap.value_or(1.0));
  }
  if (!c.builtin.empty())
    throw InvalidArgument("unknown builtin constraints '" + c.builtin + "'");
  std::vector<Interval> boxes;
  for (const auto& b : c.boxes) boxes.push_back({b[0], b[1]});
  if (c.a.empty()) return ConstraintSet(std::move(boxes));
  return ConstraintSet(std::move(boxes), to_matrix(c.a, "constraints.A"), to_vector(c.b));
}

struct GammaContext {
  Index n = 0;
  double b1 = 0.0;
  double b2 = 0.0;
  const ParamSchedule* delta = nullptr;
  const ParamSchedule* epsilon = nullptr;
  double* b1_used = nullptr;
  double* b2_used = nullptr;
};

inline ParamSchedule build_schedule(const ScheduleSpec& s, const GammaContext& ctx) {
  if (s.kind == "const") return ParamSchedule::constant(s.c);
  if (s.kind == "power") return ParamSchedule::power(s.c, s.p);
  if (s.kind == "exp") return ParamSchedule::exponential(s.c, s.r);
  if (s.kind == "sum") {
    std::vector<ParamSchedule> terms;
    for (const auto& t : s.terms) terms.push_back(build_schedule(t, ctx));
    return ParamSchedule::sum(std::move(terms));
  }
  if (s.kind == "derived-gamma") {
    if (!ctx.delta || !ctx.epsilon)
      throw InvalidArgument("derived-gamma is only valid for gamma");
    if (s.variant != "full" && s.variant != "partial")
      throw InvalidArgument("derived-gamma: variant must be full or partial");
    const double b1 = s.b1.value_or(ctx.b1);
    const double b2 = s.b2.value_or(ctx.b2);
    *ctx.b1_used = b1;
    *ctx.b2_used = b2;
    return derive_gamma(ctx.n, b1, b2, *ctx.delta, *ctx.epsilon,
                        s.variant == "full" ? GammaVariant::kFull : GammaVariant::kPartial);
  }
  throw InvalidArgument("schedule: unknown kind '" + s.kind + "'");
}

}  // namespace detail

/// Builds the model objects a config describes and checks that their
/// dimensions agree.
inline ResolvedExperiment resolve(const ExperimentConfig& cfg) {
  std::optional<CommGraph> graph;
  if (cfg.graph) graph = detail::build_graph(*cfg.graph);
  if (cfg.algorithm != "full" && !graph)
    throw InvalidArgument("config: algorithm '" + cfg.algorithm + "' needs a graph");

  GameModel game = detail::build_game(cfg.game, graph);
  const Index n = game.n_players();
  if (graph && graph->size() != n)
    throw InvalidArgument("config: graph size does not match the number of players");
  ConstraintSet constraints = detail::build_constraints(cfg.constraints, n, graph);
  if (constraints.size() != n)
    throw InvalidArgument("config: constraints size does not match the number of players");

  const double radius = cfg.check.radius;
  LipschitzEstimates bounds = lipschitz_bounds(game, constraints, radius);

  ScheduleSet s;
  const auto& sp = cfg.schedules;
  auto need = [&](const std::optional<ScheduleSpec>& spec, const char* name) {
    if (!spec) throw InvalidArgument(std::string("config: schedule '") + name + "' is required");
    return *spec;
  };
  double b1_used = bounds.b1, b2_used = bounds.b2;
  detail::GammaContext plain{n, bounds.b1, bounds.b2, nullptr, nullptr, &b1_used, &b2_used};
  s.delta = detail::build_schedule(need(sp.delta, "delta"), plain);
  s.w = cfg.algorithm == "full" ? ParamSchedule::constant(0.0)
                                : detail::build_schedule(need(sp.w, "w"), plain);
  if (cfg.algorithm != "unconstrained") {
    s.epsilon = detail::build_schedule(need(sp.epsilon, "epsilon"), plain);
    s.sigma = detail::build_schedule(need(sp.sigma, "sigma"), plain);
    detail::GammaContext with_refs = plain;
    with_refs.delta = &s.delta;
    with_refs.epsilon = &s.epsilon;
    s.gamma = detail::build_schedule(need(sp.gamma, "gamma"), with_refs);
    validate_at(s, 0.0);
  } else {
    s.epsilon = ParamSchedule::constant(0.0);
    s.gamma = ParamSchedule::constant(1.0);
    s.sigma = ParamSchedule::constant(1.0);
  }

  const Vector x0 = detail::to_vector(cfg.initial.x);
  detail::require_size(x0, n, "config: initial.x");
  SwarmState initial;
  if (cfg.algorithm == "full") {
    initial = SwarmState(x0);
  } else if (!cfg.initial.y.empty()) {
    const Matrix y = detail::to_matrix(cfg.initial.y, "initial.y");
    if (y.rows() != n || y.cols() != n)
      throw InvalidArgument("config: initial.y must be N x N");
    initial = SwarmState(x0, y);
  } else {
    initial = SwarmState::with_estimates(x0, cfg.initial.y_fill);
  }

  return {cfg, std::move(game), std::move(constraints), std::move(graph), std::move(s),
          bounds, b1_used, b2_used, std::move(initial)};
}

/// Runs the condition checker matching the config's algorithm.
inline ConditionReport check_schedules(const ResolvedExperiment& r) {
  const auto& cfg = r.config;
  const Index n = r.game.n_players();
  if (cfg.algorithm == "full")
    return check_full_decision_conditions(r.schedules, n, r.b1_used, r.b2_used,
                                     cfg.check.horizon, cfg.check.grid_size);
  const double lmin = lambda_min_all(*r.graph);
  if (cfg.algorithm == "partial")
    return check_partial_decision_conditions(r.schedules, n, r.b1_used, r.b2_used,
                                     std::max(r.bounds.b3, r.b1_used), lmin,
                                     cfg.check.horizon, cfg.check.grid_size);
  const double c = 2.0 * double(n);
  return check_unconstrained_conditions(r.schedules.delta, r.schedules.w, n, r.bounds.b1,
                                        r.bounds.b1, lmin, cfg.check.c1.value_or(c),
                                        cfg.check.c2.value_or(c), cfg.check.horizon,
                                        cfg.check.grid_size);
}

inline ConditionReport check_schedules(const ExperimentConfig& cfg) {
  return check_schedules(resolve(cfg));
}

inline OracleResult solve_oracle(const ResolvedExperiment& r) {
  return least_norm_ve(r.game, r.constraints, r.config.reference.tol);
}

inline OracleResult solve_oracle(const ExperimentConfig& cfg) {
  return solve_oracle(resolve(cfg));
}

inline IntegratorConfig integrator_config(const IntegratorSpec& s) {
  IntegratorConfig c;
  if (s.method == "rk4") {
    c.method = Rk4Fixed{s.h};
  } else if (s.method == "rk45") {
    c.method = Rk45Adaptive{s.rtol, s.atol, s.h_min, s.h_max};
  } else if (s.method == "reparam-rk45") {
    c.method = ReparamRk45{s.rtol, s.atol, s.h_min, s.h_max};
  } else {
    throw InvalidArgument("integrator: method must be rk4, rk45 or reparam-rk45");
  }
  c.horizon = s.horizon;
  c.sample_stride = s.sample_stride;
  c.max_steps = s.max_steps;
  c.record_estimates = true;
  return c;
}

inline Dynamics build_dynamics(const ResolvedExperiment& r) {
  if (r.config.algorithm == "full")
    return make_full_decision(r.game, r.constraints, r.schedules);
  if (r.config.algorithm == "partial")
    return make_partial_decision(r.game, r.constraints, r.schedules, *r.graph);
  return make_unconstrained(r.game, r.schedules.delta, r.schedules.w, *r.graph);
}

// ---------------------------------------------------------------------------
// JSON views of results
// ---------------------------------------------------------------------------

inline json to_json_value(const ConditionReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json jc{{"name", c.name}, {"passed", c.passed}, {"proxy", c.proxy}};
    jc["witness_t"] = c.witness_t ? json(*c.witness_t) : json(nullptr);
    if (!c.detail.empty()) jc["detail"] = c.detail;
    checks.push_back(jc);
  }
  json j{{"flow", r.flow},   {"horizon", r.horizon},
         {"grid_size", r.grid_size}, {"all_passed", r.all_passed()},
         {"c0_empirical", r.c0_empirical}, {"checks", checks}};
  if (r.min_theta_margin) j["min_theta_margin"] = *r.min_theta_margin;
  if (r.min_w_margin) j["min_w_margin"] = *r.min_w_margin;
  return j;
}

inline json to_json_value(const OracleResult& o) {
  json path = json::array();
  for (const auto& p : o.path) {
    path.push_back({{"delta", p.delta},
                    {"epsilon", p.epsilon ? json(*p.epsilon) : json(nullptr)},
                    {"x", detail::to_std(p.x)}});
  }
  return json{{"x_star", detail::to_std(o.x_star)},
              {"residual", o.residual},
              {"iterations", o.iterations},
              {"path", path}};
}

inline json to_json_value(const IntegratorStats& s) {
  return json{{"steps", s.steps},
              {"rejected", s.rejected},
              {"rhs_evals", s.rhs_evals},
              {"final_step", s.final_step}};
}

/// Table view for terminals.
inline std::string format_report(const ConditionReport& r) {
  std::ostringstream os;
  os << r.flow << " conditions on [0, " << r.horizon << "], " << r.grid_size
     << " grid points\n";
  for (const auto& c : r.checks) {
    os << "  " << (c.passed ? "pass" : "FAIL") << "  " << c.name;
    if (c.proxy) os << "  (proxy)";
    if (c.witness_t) os << "  witness t=" << *c.witness_t;
    if (!c.detail.empty()) os << "  " << c.detail;
    os << '\n';
  }
  os << "  c0 (empirical) = " << r.c0_empirical << '\n';
  if (r.min_theta_margin) os << "  min theta margin = " << *r.min_theta_margin << '\n';
  if (r.min_w_margin) os << "  min w margin = " << *r.min_w_margin << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

struct RunResult {
  Trajectory trajectory;
  std::optional<Vector> reference;
  std::optional<OracleResult> oracle;
  std::optional<TrajectoryMetrics> metrics;
  ConditionReport schedule_report;
  json summary;
  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> summary_path;
};

/// Output directory: $RPGNE_OUTPUT_DIR when set, else the config's.
inline std::filesystem::path output_dir(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return cfg.output.dir;
}

struct RunOptions {
  bool write_files = true;
  std::ostream* warnings = &std::cerr;
};

inline RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {}) {
  const ResolvedExperiment r = resolve(cfg);
  RunResult out;

  out.schedule_report = check_schedules(r);
  if (opts.warnings) {
    for (const auto& c : out.schedule_report.checks)
      if (!c.passed)
        *opts.warnings << "warning: schedule condition '" << c.name << "' not met"
                       << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
  }

  if (cfg.reference.kind == "oracle") {
    out.oracle = solve_oracle(r);
    out.reference = out.oracle->x_star;
  } else if (cfg.reference.kind == "explicit") {
    out.reference = detail::to_vector(cfg.reference.x);
    detail::require_size(*out.reference, r.game.n_players(), "config: reference.x");
  }

  const Dynamics dyn = build_dynamics(r);
  out.trajectory = integrate(dyn, r.initial, integrator_config(cfg.integrator), out.reference);
  if (out.reference) out.metrics = metrics(out.trajectory, r.constraints, *out.reference);

  const auto& last = out.trajectory.final();
  json s;
  s["schema_version"] = kSummarySchemaVersion;
  s["name"] = cfg.name;
  s["algorithm"] = cfg.algorithm;
  s["final_t"] = last.t;
  s["final_tau"] = last.tau;
  s["final_x"] = detail::to_std(last.x);
  s["final_violation"] = r.constraints.shared_violation(last.x);
  s["final_disagreement"] =
      last.y ? consensus_disagreement(SwarmState(last.x, *last.y)) : 0.0;
  s["reference"] = out.reference ? json(detail::to_std(*out.reference)) : json(nullptr);
  if (out.metrics) {
    s["final_err"] = out.metrics->final_err;
    s["err_monotone_after_transient"] = out.metrics->err_monotone_after_transient;
    s["transient_cutoff"] = out.metrics->transient_cutoff
                                ? json(*out.metrics->transient_cutoff)
                                : json(nullptr);
  } else {
    s["final_err"] = nullptr;
  }
  s["schedule_report"] = to_json_value(out.schedule_report);
  s["oracle_result"] = out.oracle ? to_json_value(*out.oracle) : json(nullptr);
  s["integrator_stats"] = to_json_value(out.trajectory.stats);

  if (opts.write_files) {
    const auto dir = output_dir(cfg);
    std::filesystem::create_directories(dir);
    const std::string prefix = cfg.output.prefix.empty() ? cfg.name : cfg.output.prefix;
    out.csv_path = dir / (prefix + ".csv");
    out.summary_path = dir / (prefix + ".summary.json");
    {
      std::ofstream f(*out.csv_path);
      if (!f) throw std::runtime_error("cannot write " + out.csv_path->string());
      write_trajectory_csv(f, out.trajectory);
    }
    s["csv"] = out.csv_path->string();
    std::ofstream f(*out.summary_path);
    if (!f) throw std::runtime_error("cannot write " + out.summary_path->string());
    f << s.dump(2) << '\n';
  }
  out.summary = std::move(s);
  return out;
}

}  // namespace rpgne
