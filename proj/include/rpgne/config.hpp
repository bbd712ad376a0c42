#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "rpgne/common.hpp"

// Experiment configuration: plain data mirroring the JSON document. Nothing
// here is resolved against the model; see experiment.hpp for that.

namespace rpgne {

using json = nlohmann::json;

/// Mirrors ParamSchedule but keeps derived-gamma symbolic so a config
/// survives a round trip unchanged.
struct ScheduleSpec {
  std::string kind = "const";  // const | power | exp | sum | derived-gamma
  double c = 0.0;
  double p = 0.0;              // power exponent
  double r = 0.0;              // exponential rate
  std::vector<ScheduleSpec> terms;
  std::string variant;         // derived-gamma: full | partial
  std::optional<double> b1;    // derived-gamma: defaults to the game's bound
  std::optional<double> b2;

  bool operator==(const ScheduleSpec&) const = default;

  static ScheduleSpec constant(double c) { return {"const", c}; }
  static ScheduleSpec power(double c, double p) {
    ScheduleSpec s{"power", c};
    s.p = p;
    return s;
  }
  static ScheduleSpec exponential(double c, double r) {
    ScheduleSpec s{"exp", c};
    s.r = r;
    return s;
  }
  static ScheduleSpec sum(std::vector<ScheduleSpec> terms) {
    ScheduleSpec s{"sum"};
    s.terms = std::move(terms);
    return s;
  }
  static ScheduleSpec derived_gamma(std::string variant,
                                    std::optional<double> b1 = std::nullopt,
                                    std::optional<double> b2 = std::nullopt) {
    ScheduleSpec s{"derived-gamma"};
    s.variant = std::move(variant);
    s.b1 = b1;
    s.b2 = b2;
    return s;
  }
};

struct ScheduleSpecs {
  std::optional<ScheduleSpec> delta, epsilon, gamma, sigma, w;
  bool operator==(const ScheduleSpecs&) const = default;
};

struct GameSpec {
  std::string builtin;  // five-player | robot-swarm | consensus | "" (explicit)
  std::vector<std::vector<double>> m_matrix;
  std::vector<double> m_vector;
  std::vector<double> coefficients;  // robot-swarm only; empty = default
  bool operator==(const GameSpec&) const = default;
};

struct ConstraintSpec {
  // five-player | five-player-noshared | robot-swarm | none | "" (explicit)
  std::string builtin;
  std::vector<std::array<double, 2>> boxes;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::optional<double> lo, hi, max_gap;  // robot-swarm overrides
  bool operator==(const ConstraintSpec&) const = default;
};

struct GraphSpec {
  std::string named;  // ring:N | path:N | complete:N, or "" with edges
  long n = 0;
  std::vector<std::tuple<long, long, double>> edges;  // 1-based
  bool operator==(const GraphSpec&) const = default;
};

struct IntegratorSpec {
  std::string method = "rk45";  // rk4 | rk45 | reparam-rk45
  double h = 1e-3;              // rk4 step
  double rtol = 1e-6;
  double atol = 1e-8;
  double h_min = 1e-12;
  double h_max = 0.1;
  double horizon = 1.0;
  long sample_stride = 1;
  long max_steps = 200'000'000;
  bool operator==(const IntegratorSpec&) const = default;
};

struct InitialSpec {
  std::vector<double> x;
  std::vector<std::vector<double>> y;  // empty = y_fill off the diagonal
  double y_fill = 0.0;
  bool operator==(const InitialSpec&) const = default;
};

struct ReferenceSpec {
  std::string kind = "oracle";  // oracle | none | explicit
  std::vector<double> x;
  double tol = 1e-6;
  bool operator==(const ReferenceSpec&) const = default;
};

struct CheckSpec {
  double horizon = 10.0;
  int grid_size = 400;
  double radius = 10.0;
  // unconstrained flow only
  std::optional<double> c1, c2;
  bool operator==(const CheckSpec&) const = default;
};

struct OutputSpec {
  std::string dir = "out";
  std::string prefix;  // defaults to the experiment name
  bool operator==(const OutputSpec&) const = default;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::string description;
  GameSpec game;
  ConstraintSpec constraints;
  std::optional<GraphSpec> graph;
  ScheduleSpecs schedules;
  std::string algorithm = "full";  // full | partial | unconstrained
  IntegratorSpec integrator;
  InitialSpec initial;
  ReferenceSpec reference;
  CheckSpec check;
  OutputSpec output;
  bool operator==(const ExperimentConfig&) const = default;
};

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

inline void require_keys(const json& j, const char* where,
                         std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw InvalidArgument(std::string(where) + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!ok.count(key))
      throw InvalidArgument(std::string(where) + ": unknown field '" + key + "'");
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <typename T>
void read(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace detail

inline void to_json(json& j, const ScheduleSpec& s) {
  j = json{{"kind", s.kind}};
  if (s.kind == "const") {
    j["c"] = s.c;
  } else if (s.kind == "power") {
    j["c"] = s.c;
    j["p"] = s.p;
  } else if (s.kind == "exp") {
    j["c"] = s.c;
    j["r"] = s.r;
  } else if (s.kind == "sum") {
    j["terms"] = s.terms;
  } else if (s.kind == "derived-gamma") {
    j["variant"] = s.variant;
    detail::put(j, "b1", s.b1);
    detail::put(j, "b2", s.b2);
  }
}

inline void from_json(const json& j, ScheduleSpec& s) {
  if (j.is_number()) {  // bare number: constant
    s = ScheduleSpec::constant(j.get<double>());
    return;
  }
  if (!j.is_object() || !j.contains("kind"))
    throw InvalidArgument("schedule: expected an object with a 'kind'");
  s = ScheduleSpec{};
  s.kind = j.at("kind").get<std::string>();
  if (s.kind == "const") {
    detail::require_keys(j, "schedule(const)", {"kind", "c"});
    s.c = j.at("c").get<double>();
  } else if (s.kind == "power") {
    detail::require_keys(j, "schedule(power)", {"kind", "c", "p"});
    s.c = j.at("c").get<double>();
    s.p = j.at("p").get<double>();
  } else if (s.kind == "exp") {
    detail::require_keys(j, "schedule(exp)", {"kind", "c", "r"});
    s.c = j.at("c").get<double>();
    s.r = j.at("r").get<double>();
  } else if (s.kind == "sum") {
    detail::require_keys(j, "schedule(sum)", {"kind", "terms"});
    s.terms = j.at("terms").get<std::vector<ScheduleSpec>>();
  } else if (s.kind == "derived-gamma") {
    detail::require_keys(j, "schedule(derived-gamma)", {"kind", "variant", "b1", "b2"});
    s.variant = j.value("variant", std::string("full"));
    detail::read(j, "b1", s.b1);
    detail::read(j, "b2", s.b2);
  } else {
    throw InvalidArgument("schedule: unknown kind '" + s.kind + "'");
  }
}

inline void to_json(json& j, const ScheduleSpecs& s) {
  j = json::object();
  detail::put(j, "delta", s.delta);
  detail::put(j, "epsilon", s.epsilon);
  detail::put(j, "gamma", s.gamma);
  detail::put(j, "sigma", s.sigma);
  detail::put(j, "w", s.w);
}

inline void from_json(const json& j, ScheduleSpecs& s) {
  detail::require_keys(j, "schedules", {"delta", "epsilon", "gamma", "sigma", "w"});
  detail::read(j, "delta", s.delta);
  detail::read(j, "epsilon", s.epsilon);
  detail::read(j, "gamma", s.gamma);
  detail::read(j, "sigma", s.sigma);
  detail::read(j, "w", s.w);
}

inline void to_json(json& j, const GameSpec& g) {
  j = json::object();
  if (!g.builtin.empty()) {
    j["builtin"] = g.builtin;
    if (!g.coefficients.empty()) j["coefficients"] = g.coefficients;
  } else {
    j["M"] = g.m_matrix;
    j["m"] = g.m_vector;
  }
}

inline void from_json(const json& j, GameSpec& g) {
  if (j.is_string()) {
    g = GameSpec{};
    g.builtin = j.get<std::string>();
    return;
  }
  detail::require_keys(j, "game", {"builtin", "coefficients", "M", "m"});
  g = GameSpec{};
  detail::read(j, "builtin", g.builtin);
  detail::read(j, "coefficients", g.coefficients);
  detail::read(j, "M", g.m_matrix);
  detail::read(j, "m", g.m_vector);
}

inline void to_json(json& j, const ConstraintSpec& c) {
  j = json::object();
  if (!c.builtin.empty()) {
    j["builtin"] = c.builtin;
    detail::put(j, "lo", c.lo);
    detail::put(j, "hi", c.hi);
    detail::put(j, "max_gap", c.max_gap);
  } else {
    j["boxes"] = c.boxes;
    if (!c.a.empty()) {
      j["A"] = c.a;
      j["b"] = c.b;
    }
  }
}

inline void from_json(const json& j, ConstraintSpec& c) {
  if (j.is_string()) {
    c = ConstraintSpec{};
    c.builtin = j.get<std::string>();
    return;
  }
  detail::require_keys(j, "constraints", {"builtin", "boxes", "A", "b", "lo", "hi", "max_gap"});
  c = ConstraintSpec{};
  detail::read(j, "builtin", c.builtin);
  detail::read(j, "boxes", c.boxes);
  detail::read(j, "A", c.a);
  detail::read(j, "b", c.b);
  detail::read(j, "lo", c.lo);
  detail::read(j, "hi", c.hi);
  detail::read(j, "max_gap", c.max_gap);
}

inline void to_json(json& j, const GraphSpec& g) {
  if (!g.named.empty()) {
    j = g.named;
    return;
  }
  json edges = json::array();
  for (const auto& [a, b, w] : g.edges) edges.push_back({a, b, w});
  j = json{{"n", g.n}, {"edges", edges}};
}

inline void from_json(const json& j, GraphSpec& g) {
  g = GraphSpec{};
  if (j.is_string()) {
    g.named = j.get<std::string>();
    return;
  }
  detail::require_keys(j, "graph", {"n", "edges"});
  g.n = j.at("n").get<long>();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || (e.size() != 2 && e.size() != 3))
      throw InvalidArgument("graph: each edge is [i, j] or [i, j, weight]");
    g.edges.emplace_back(e[0].get<long>(), e[1].get<long>(),
                         e.size() == 3 ? e[2].get<double>() : 1.0);
  }
}

inline void to_json(json& j, const IntegratorSpec& s) {
  j = json{{"method", s.method},   {"h", s.h},         {"rtol", s.rtol},
           {"atol", s.atol},       {"h_min", s.h_min}, {"h_max", s.h_max},
           {"horizon", s.horizon}, {"sample_stride", s.sample_stride},
           {"max_steps", s.max_steps}};
}

inline void from_json(const json& j, IntegratorSpec& s) {
  detail::require_keys(j, "integrator", {"method", "h", "rtol", "atol", "h_min", "h_max",
                                         "horizon", "sample_stride", "max_steps"});
  s = IntegratorSpec{};
  detail::read(j, "method", s.method);
  detail::read(j, "h", s.h);
  detail::read(j, "rtol", s.rtol);
  detail::read(j, "atol", s.atol);
  detail::read(j, "h_min", s.h_min);
  detail::read(j, "h_max", s.h_max);
  detail::read(j, "horizon", s.horizon);
  detail::read(j, "sample_stride", s.sample_stride);
  detail::read(j, "max_steps", s.max_steps);
}

inline void to_json(json& j, const InitialSpec& s) {
  j = json{{"x", s.x}, {"y_fill", s.y_fill}};
  if (!s.y.empty()) j["y"] = s.y;
}

inline void from_json(const json& j, InitialSpec& s) {
  if (j.is_array()) {
    s = InitialSpec{};
    s.x = j.get<std::vector<double>>();
    return;
  }
  detail::require_keys(j, "initial", {"x", "y", "y_fill"});
  s = InitialSpec{};
  s.x = j.at("x").get<std::vector<double>>();
  detail::read(j, "y", s.y);
  detail::read(j, "y_fill", s.y_fill);
}

inline void to_json(json& j, const ReferenceSpec& r) {
  j = json{{"kind", r.kind}, {"tol", r.tol}};
  if (r.kind == "explicit") j["x"] = r.x;
}

inline void from_json(const json& j, ReferenceSpec& r) {
  r = ReferenceSpec{};
  if (j.is_string()) {
    r.kind = j.get<std::string>();
  } else if (j.is_array()) {
    r.kind = "explicit";
    r.x = j.get<std::vector<double>>();
  } else {
    detail::require_keys(j, "reference", {"kind", "x", "tol"});
    detail::read(j, "kind", r.kind);
    detail::read(j, "x", r.x);
    detail::read(j, "tol", r.tol);
  }
  if (r.kind != "oracle" && r.kind != "none" && r.kind != "explicit")
    throw InvalidArgument("reference: kind must be oracle, none or explicit");
}

inline void to_json(json& j, const CheckSpec& c) {
  j = json{{"horizon", c.horizon}, {"grid_size", c.grid_size}, {"radius", c.radius}};
  detail::put(j, "c1", c.c1);
  detail::put(j, "c2", c.c2);
}

inline void from_json(const json& j, CheckSpec& c) {
  detail::require_keys(j, "check", {"horizon", "grid_size", "radius", "c1", "c2"});
  c = CheckSpec{};
  detail::read(j, "horizon", c.horizon);
  detail::read(j, "grid_size", c.grid_size);
  detail::read(j, "radius", c.radius);
  detail::read(j, "c1", c.c1);
  detail::read(j, "c2", c.c2);
}

inline void to_json(json& j, const OutputSpec& o) {
  j = json{{"dir", o.dir}};
  if (!o.prefix.empty()) j["prefix"] = o.prefix;
}

inline void from_json(const json& j, OutputSpec& o) {
  detail::require_keys(j, "output", {"dir", "prefix"});
  o = OutputSpec{};
  detail::read(j, "dir", o.dir);
  detail::read(j, "prefix", o.prefix);
}

inline void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"name", c.name},
           {"game", c.game},
           {"constraints", c.constraints},
           {"schedules", c.schedules},
           {"algorithm", c.algorithm},
           {"integrator", c.integrator},
           {"initial", c.initial},
           {"reference", c.reference},
           {"check", c.check},
           {"output", c.output}};
  if (!c.description.empty()) j["description"] = c.description;
  if (c.graph) j["graph"] = *c.graph;
}

inline void from_json(const json& j, ExperimentConfig& c) {
  detail::require_keys(j, "config",
                       {"name", "description", "game", "constraints", "graph", "schedules",
                        "algorithm", "integrator", "initial", "reference", "check",
                        "output"});
  c = ExperimentConfig{};
  detail::read(j, "name", c.name);
  detail::read(j, "description", c.description);
  c.game = j.at("game").get<GameSpec>();
  detail::read(j, "constraints", c.constraints);
  detail::read(j, "graph", c.graph);
  detail::read(j, "schedules", c.schedules);
  detail::read(j, "algorithm", c.algorithm);
  detail::read(j, "integrator", c.integrator);
  c.initial = j.at("initial").get<InitialSpec>();
  detail::read(j, "reference", c.reference);
  detail::read(j, "check", c.check);
  detail::read(j, "output", c.output);
  if (c.algorithm != "full" && c.algorithm != "partial" && c.algorithm != "unconstrained")
    throw InvalidArgument("config: algorithm must be full, partial or unconstrained");
}

inline ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config: malformed JSON: ") + e.what());
  }
  try {
    return j.get<ExperimentConfig>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

inline std::string dump_config(const ExperimentConfig& c) { return json(c).dump(2); }

// ---------------------------------------------------------------------------
// Builtin experiments
// ---------------------------------------------------------------------------

namespace builtin {

inline ExperimentConfig paper_5player() {
  ExperimentConfig c;
  c.name = "paper-5player";
  c.description =
      "Five-player game with the shared constraint, partial-decision flow, "
      "delta = 0.1(1+t)^-0.5, eps = 20(1+t)^1.2, sigma = (1+t)^5, "
      "w = 500 + 500(1+t)^9, assumed ring graph 1-2-3-4-5-1. Short horizon "
      "(t ~ 2): the consensus gain makes longer explicit runs infeasible.";
  c.game.builtin = "five-player";
  c.constraints.builtin = "five-player";
  c.graph = GraphSpec{"ring:5"};
  c.algorithm = "partial";
  c.schedules.delta = ScheduleSpec::power(0.1, -0.5);
  c.schedules.epsilon = ScheduleSpec::power(20.0, 1.2);
  c.schedules.gamma = ScheduleSpec::derived_gamma("partial", 5.0, 5.0);
  c.schedules.sigma = ScheduleSpec::power(1.0, 5.0);
  c.schedules.w = ScheduleSpec::sum({ScheduleSpec::constant(500.0), ScheduleSpec::power(500.0, 9.0)});
  c.integrator.method = "reparam-rk45";
  c.integrator.horizon = 121.0;  // τ = ((1+t)^6 - 1)/6, t ≈ 2
  c.integrator.h_max = 1.0;
  c.integrator.sample_stride = 200;
  c.initial.x = {3, 0, 2, 0, 0};
  return c;
}

inline ExperimentConfig paper_5player_noshared() {
  ExperimentConfig c;
  c.name = "paper-5player-noshared";
  c.description =
      "Shared constraint removed, regularized full-decision flow with "
      "delta = 0.1(1+t)^-0.5, sigma = (1+t)^5 and derived gamma; converges "
      "to the least-norm equilibrium 0.";
  c.game.builtin = "five-player";
  c.constraints.builtin = "five-player-noshared";
  c.algorithm = "full";
  c.schedules.delta = ScheduleSpec::power(0.1, -0.5);
  c.schedules.epsilon = ScheduleSpec::power(20.0, 1.2);
  c.schedules.gamma = ScheduleSpec::derived_gamma("partial", 5.0, 0.0);
  c.schedules.sigma = ScheduleSpec::power(1.0, 5.0);
  c.schedules.w = ScheduleSpec::constant(0.0);
  c.integrator.method = "reparam-rk45";
  c.integrator.horizon = 1e6;
  c.integrator.h_max = 1e5;
  c.integrator.rtol = 1e-8;
  c.integrator.atol = 1e-10;
  c.initial.x = {3, 0, 2, 0, 0};
  c.check.horizon = 1e5;
  return c;
}

inline ExperimentConfig paper_5player_noshared_unregularized() {
  ExperimentConfig c = paper_5player_noshared();
  c.name = "paper-5player-noshared-unreg";
  c.description =
      "Shared constraint removed, unregularized flow (delta = eps = 0, "
      "gamma = 0.1, sigma = 1); stops at a non-least-norm equilibrium.";
  c.schedules.delta = ScheduleSpec::constant(0.0);
  c.schedules.epsilon = ScheduleSpec::constant(0.0);
  c.schedules.gamma = ScheduleSpec::constant(0.1);
  c.schedules.sigma = ScheduleSpec::constant(1.0);
  c.integrator = IntegratorSpec{};
  c.integrator.method = "rk45";
  c.integrator.horizon = 500.0;
  c.integrator.h_max = 1.0;
  c.integrator.rtol = 1e-9;
  c.integrator.atol = 1e-11;
  c.integrator.sample_stride = 10;
  c.check.horizon = 10.0;
  return c;
}

/// Exponential schedule family with b > 2a > 0 (a = 0.1, b = 0.3) for the
/// full-decision flow. b1, b2 default to the game's bounds.
inline ExperimentConfig exp_5player_full() {
  ExperimentConfig c;
  c.name = "exp-5player-full";
  c.description =
      "Full-decision flow, sigma = e^{4(a+b)t}, delta = b1 e^{-at}, "
      "eps = (b1/b2) e^{bt}, derived gamma, a = 0.1, b = 0.3.";
  c.game.builtin = "five-player";
  c.constraints.builtin = "five-player";
  c.algorithm = "full";
  const double b1 = std::sqrt(12.0), b2 = 2.0 * std::sqrt(5.0);
  constexpr double a = 0.1, b = 0.3;
  c.schedules.delta = ScheduleSpec::exponential(b1, -a);
  c.schedules.epsilon = ScheduleSpec::exponential(b1 / b2, b);
  c.schedules.gamma = ScheduleSpec::derived_gamma("full");
  c.schedules.sigma = ScheduleSpec::exponential(1.0, 4.0 * (a + b));
  c.schedules.w = ScheduleSpec::constant(0.0);
  c.integrator.method = "reparam-rk45";
  c.integrator.horizon = 50.0;
  c.integrator.h_max = 1.0;
  c.integrator.rtol = 1e-8;
  c.integrator.atol = 1e-10;
  c.initial.x = {3, 0, 2, 0, 0};
  c.check.horizon = 50.0;
  return c;
}

/// Power-law schedules that pass the partial-decision conditions on ring:5
/// (K = N b1² + 1 with b1 the max row norm).
inline ExperimentConfig power_5player_partial() {
  ExperimentConfig c;
  c.name = "power-5player-partial";
  c.description =
      "Partial-decision flow on ring:5 with sigma = (1+t)^6, "
      "delta = sqrt(K)(1+t)^{-1/2}, eps = (sqrt(K)/b2)(1+t)^{1.2}, "
      "derived gamma, w = 700(1+t)^{9.5}.";
  c.game.builtin = "five-player";
  c.constraints.builtin = "five-player";
  c.graph = GraphSpec{"ring:5"};
  c.algorithm = "partial";
  const double k = 5.0 * 12.0 + 1.0;
  const double b2 = 2.0 * std::sqrt(5.0);
  c.schedules.delta = ScheduleSpec::power(std::sqrt(k), -0.5);
  c.schedules.epsilon = ScheduleSpec::power(std::sqrt(k) / b2, 1.2);
  c.schedules.gamma = ScheduleSpec::derived_gamma("partial");
  c.schedules.sigma = ScheduleSpec::power(1.0, 6.0);
  c.schedules.w = ScheduleSpec::power(700.0, 9.5);
  c.integrator.method = "reparam-rk45";
  c.integrator.horizon = 300.0;
  c.integrator.h_max = 1.0;
  c.integrator.sample_stride = 2000;
  c.initial.x = {3, 0, 2, 0, 0};
  c.check.horizon = 1e5;
  return c;
}

inline ExperimentConfig paper_robots() {
  ExperimentConfig c;
  c.name = "paper-robots";
  c.description =
      "Eight-robot connectivity game, delta = 0.01(1+t)^-0.5, "
      "eps = 2(1+t)^1.2, sigma = 2(1+t)^5, w = 500 + 500(1+t)^10, assumed "
      "ring graph 1-...-8-1. Short horizon.";
  c.game.builtin = "robot-swarm";
  c.constraints.builtin = "robot-swarm";
  c.graph = GraphSpec{"ring:8"};
  c.algorithm = "partial";
  c.schedules.delta = ScheduleSpec::power(0.01, -0.5);
  c.schedules.epsilon = ScheduleSpec::power(2.0, 1.2);
  c.schedules.gamma = ScheduleSpec::derived_gamma("partial", 5.0, 5.0);
  c.schedules.sigma = ScheduleSpec::power(2.0, 5.0);
  c.schedules.w = ScheduleSpec::sum({ScheduleSpec::constant(500.0), ScheduleSpec::power(500.0, 10.0)});
  c.integrator.method = "reparam-rk45";
  c.integrator.horizon = 81.0;  // τ = ((1+t)^6 - 1)/3, t ≈ 1.5
  c.integrator.h_max = 1.0;
  c.integrator.sample_stride = 200;
  c.initial.x = {0, 4, 10, 6, -1, 0, 12, 0};
  return c;
}

/// Robot game with constant-step schedules fast enough to reach the
/// equilibrium. These do not satisfy the sufficient conditions.
inline ExperimentConfig robots_fast() {
  ExperimentConfig c = paper_robots();
  c.name = "robots-fast";
  c.description =
      "Eight-robot game on ring:8 with constant gamma and slowly decaying "
      "delta; not covered by the convergence conditions, used as a "
      "self-consistency run against the oracle.";
  c.schedules.delta = ScheduleSpec::power(0.1, -0.6);
  c.schedules.epsilon = ScheduleSpec::power(2.0, 0.5);
  c.schedules.gamma = ScheduleSpec::constant(0.02);
  c.schedules.sigma = ScheduleSpec::constant(1.0);
  c.schedules.w = ScheduleSpec::constant(20.0);
  c.integrator = IntegratorSpec{};
  c.integrator.method = "rk45";
  c.integrator.horizon = 2000.0;
  c.integrator.h_max = 1.0;
  c.integrator.sample_stride = 50;
  c.check.horizon = 2000.0;
  return c;
}

inline ExperimentConfig consensus() {
  ExperimentConfig c;
  c.name = "consensus";
  c.description =
      "Consensus game on ring:5 (every consensus vector is an equilibrium), "
      "unconstrained flow with delta = (1+t)^{-1/2}; converges to 0.";
  c.game.builtin = "consensus";
  c.constraints.builtin = "none";
  c.graph = GraphSpec{"ring:5"};
  c.algorithm = "unconstrained";
  c.schedules.delta = ScheduleSpec::power(1.0, -0.5);
  c.schedules.w = ScheduleSpec::power(4000.0, 0.5);
  c.integrator.method = "rk45";
  c.integrator.horizon = 50.0;
  c.integrator.h_max = 0.1;
  c.integrator.sample_stride = 100;
  c.initial.x = {3, 0, 2, 0, 0};
  c.check.horizon = 1e6;
  return c;
}

inline std::vector<ExperimentConfig> all_experiments() {
  return {paper_5player(),        paper_5player_noshared(), paper_5player_noshared_unregularized(),
          exp_5player_full(),     power_5player_partial(),  paper_robots(),
          robots_fast(),          consensus()};
}

inline ExperimentConfig experiment(const std::string& name) {
  for (auto& c : all_experiments())
    if (c.name == name) return c;
  throw InvalidArgument("unknown builtin experiment '" + name + "'");
}

}  // namespace builtin

}  // namespace rpgne
