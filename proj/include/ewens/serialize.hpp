#pragma once

// JSON forms of the library's values (nlohmann::json).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

#include "ewens/elementary.hpp"
#include "ewens/graphs.hpp"
#include "ewens/montecarlo.hpp"
#include "ewens/permutation.hpp"
#include "ewens/ratfun.hpp"
#include "ewens/set_partition.hpp"
#include "ewens/ssep.hpp"
#include "ewens/statistics.hpp"

namespace ewens {

using json = nlohmann::json;

// Doubles in reports carry 15 significant digits.
inline json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

inline json exact(const Rational& q) { return to_string(q); }

inline json degree_json(Degree d) {
  return d.is_minus_infinity() ? json("-inf") : json(d.value());
}

inline json to_json_value(const Permutation& p) {
  return json(std::vector<int>(p.one_line().begin(), p.one_line().end()));
}

inline Permutation permutation_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("permutation must be a JSON array");
  return Permutation(j.get<std::vector<int>>());
}

inline json to_json_value(const SetPartition& p) { return json(p.blocks()); }

inline SetPartition partition_from_json(const json& j, int n) {
  if (!j.is_array()) throw ValidationError("partition must be a JSON array of arrays");
  std::vector<std::vector<int>> blocks;
  for (const auto& b : j) {
    if (!b.is_array()) throw ValidationError("partition block must be an array");
    blocks.push_back(b.get<std::vector<int>>());
  }
  return SetPartition::from_blocks(n, blocks);
}

inline json to_json_value(const SimpleGraph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

// Doubled vertex sets: barred w is written as -w.
inline json doubled_to_json(const SimpleGraph& g) {
  const int m = doubled_half(g);
  auto label = [m](int v) { return v > m ? -(v - m) : v; };
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({label(u), label(v)});
  return {{"n", m}, {"edges", edges}};
}

inline SimpleGraph graph_from_json(const json& j) {
  SimpleGraph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  return g;
}

inline SimpleGraph doubled_from_json(const json& j) {
  const int m = j.at("n").get<int>();
  auto vertex = [m](int label) {
    if (label == 0 || std::abs(label) > m) throw ValidationError("doubled vertex label out of range");
    return label > 0 ? label : m - label;
  };
  SimpleGraph g(2 * m);
  for (const auto& e : j.at("edges")) g.add_edge(vertex(e.at(0).get<int>()), vertex(e.at(1).get<int>()));
  return g;
}

inline json to_json_value(const RatFun& f) {
  return {{"text", f.to_text()}, {"pretty", f.pretty()}, {"degree", degree_json(f.degree())}};
}

inline json to_json_value(const ElementarySpec& s) {
  return {{"i", s.i}, {"s", s.s}, {"tau", to_json_value(s.tau)}};
}

inline ElementarySpec spec_from_json(const json& j) {
  auto i = j.at("i").get<std::vector<int>>();
  auto s = j.at("s").get<std::vector<int>>();
  const int r = static_cast<int>(i.size());
  if (!j.contains("tau")) return ElementarySpec(i, s);
  return ElementarySpec(i, s, partition_from_json(j.at("tau"), r));
}

inline json to_json_value(const MainLemmaReport& r) {
  return {{"ratfun", r.cumulant.pretty()},
          {"text", r.cumulant.to_text()},
          {"degree", degree_json(r.degree)},
          {"bound", r.bound},
          {"holds", r.holds}};
}

inline json to_json_value(const DashedPattern& p) {
  return {{"tau", to_json_value(p.tau)}, {"X", p.adjacent}};
}

inline json to_json_value(const BivincularPattern& p) {
  return {{"tau", to_json_value(p.tau)}, {"X", p.adjacent}, {"Y", p.value_adjacent}};
}

inline DashedPattern dashed_from_json(const json& j) {
  return DashedPattern(permutation_from_json(j.at("tau")), j.value("X", std::vector<int>{}));
}

inline BivincularPattern bivincular_from_json(const json& j) {
  return BivincularPattern(permutation_from_json(j.at("tau")), j.value("X", std::vector<int>{}),
                           j.value("Y", std::vector<int>{}));
}

inline json to_json_value(const LocalExpr& e) { return {{"var", std::string(1, e.var)}, {"j", e.j}, {"d", e.d}}; }

inline LocalExpr local_expr_from_json(const json& j) {
  const auto var = j.at("var").get<std::string>();
  if (var != "i" && var != "s") throw ValidationError("expression variable must be \"i\" or \"s\"");
  return LocalExpr{var[0], j.at("j").get<int>(), j.value("d", 0)};
}

// {"p": 2, "constraints": [[lhs, "<", rhs], ...]}
inline LocalStatistic local_from_json(const json& j) {
  std::vector<LocalConstraint> cs;
  for (const auto& c : j.at("constraints")) {
    if (!c.is_array() || c.size() != 3) throw ValidationError("constraint must be [lhs, relation, rhs]");
    cs.push_back({local_expr_from_json(c[0]), parse_relation(c[1].get<std::string>()), local_expr_from_json(c[2])});
  }
  return LocalStatistic(j.at("p").get<int>(), std::move(cs));
}

inline json to_json_value(const LocalStatistic& s) {
  json cs = json::array();
  for (const auto& c : s.constraints) {
    cs.push_back({to_json_value(c.lhs), relation_symbol(c.rel), to_json_value(c.rhs)});
  }
  return {{"p", s.p}, {"constraints", cs}};
}

inline json to_json_value(const Shape& s) { return json(s.rows); }

inline json to_json_value(const RunConfig& c) {
  return {{"N", c.n},           {"theta", real(c.theta)},
          {"samples", c.samples}, {"seed", c.seed},
          {"workers", c.workers}, {"se_multiple", real(c.se_multiple)},
          {"tv_threshold", real(c.tv_threshold)}, {"bootstrap", c.bootstrap}};
}

inline json to_json_value(const CumulantEstimate& e) {
  return {{"order", e.order}, {"value", real(e.value)}, {"se", real(e.se)}, {"samples", e.samples}};
}

inline json to_json_value(const std::vector<CumulantEstimate>& es) {
  json out = json::array();
  for (const auto& e : es) out.push_back(to_json_value(e));
  return out;
}

inline json reals(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(real(x));
  return out;
}

inline json to_json_value(const PoissonReport& r) {
  return {{"lambda", real(r.lambda)},
          {"tv", real(r.tv)},
          {"tv_threshold", real(r.threshold)},
          {"support_max", r.support_max},
          {"empirical_pmf", reals(r.empirical_pmf)},
          {"poisson_pmf", reals(r.poisson_pmf)},
          {"cumulants", to_json_value(r.cumulants)},
          {"tv_pass", r.tv_pass},
          {"cumulants_pass", r.cumulants_pass},
          {"verdict", r.verdict}};
}

inline json to_json_value(const GaussianReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"N", l.n},
                      {"cumulants", to_json_value(l.cumulants)},
                      {"skewness", real(l.skewness)},
                      {"excess_kurtosis", real(l.excess_kurtosis)}});
  }
  json verdict = r.verdict ? json(*r.verdict) : json(nullptr);
  return {{"levels", levels},
          {"degenerate", r.degenerate},
          {"higher_cumulants_vanish", r.higher_cumulants_vanish},
          {"variance_stabilizes", r.variance_stabilizes},
          {"verdict", verdict}};
}

inline json to_json_value(const VReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"N", l.n},
                      {"normalized_mean", real(l.normalized_mean)},
                      {"normalized_mean_se", real(l.normalized_mean_se)},
                      {"V", real(l.v)},
                      {"V_se", real(l.v_se)}});
  }
  json exact_table = json::array();
  for (const auto& e : r.exact) {
    exact_table.push_back({{"N", e.n}, {"mean", exact(e.mean)}, {"variance", exact(e.variance)}});
  }
  return {{"levels", levels},
          {"V", real(r.v_fit.intercept)},
          {"V_se", real(r.v_fit.intercept_se)},
          {"V_slope", real(r.v_fit.slope)},
          {"mean_limit_fit", real(r.mean_fit.intercept)},
          {"mean_limit_fit_se", real(r.mean_fit.intercept_se)},
          {"mean_limit", real(r.limit_mean)},
          {"exact", exact_table},
          {"V_positive", r.v_positive},
          {"mean_consistent", r.mean_consistent}};
}

inline json to_json_value(const PairEstimate& p) {
  return {{"covariance", real(p.covariance)},
          {"covariance_se", real(p.covariance_se)},
          {"correlation", real(p.correlation)},
          {"correlation_se", real(p.correlation_se)}};
}

inline json to_json_value(const ProfileReport& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    points.push_back({{"x", real(p.x)},
                      {"mean", real(p.mean)},
                      {"mean_se", real(p.mean_se)},
                      {"limit", real(p.limit)},
                      {"finite_N_mean", real(p.finite_mean)},
                      {"z_cumulants", to_json_value(p.z_cumulants)},
                      {"mean_pass", p.mean_pass},
                      {"finite_N_mean_pass", p.finite_mean_pass},
                      {"higher_cumulants_pass", p.higher_pass}});
  }
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"x", real(r.points[p.a].x)},
                     {"y", real(r.points[p.b].x)},
                     {"covariance", real(p.z.covariance)},
                     {"covariance_se", real(p.z.covariance_se)},
                     {"K", real(p.kernel)},
                     {"pass", p.pass}});
  }
  return {{"N", r.n}, {"samples", r.samples}, {"points", points}, {"pairs", pairs}, {"verdict", r.verdict}};
}

}  // namespace ewens
