#pragma once

#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cognet/belief.hpp"
#include "cognet/design.hpp"
#include "cognet/games.hpp"
#include "cognet/inequality.hpp"
#include "cognet/likelihood.hpp"
#include "cognet/ordering.hpp"
#include "cognet/sbm.hpp"
#include "cognet/util.hpp"

namespace cognet {

using json = nlohmann::json;

// ---- JSON ----------------------------------------------------------------
// NaN marks "undefined" in a few report fields (no eligible agents, empty
// bucket, impossible class pair). JSON has no NaN, so it dumps as null and
// these helpers read null back as NaN.

namespace detail {
inline double json_double(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN()
                     : j.get<double>();
}
inline std::vector<double> json_double_vector(const json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(json_double(item));
  return out;
}
}  // namespace detail

inline void to_json(json& j, const Belief& b) {
  j = json{{"level", b.level}, {"p", b.p}, {"weights", b.weights},
           {"partition", b.partition}};
}
inline void from_json(const json& j, Belief& b) {
  j.at("level").get_to(b.level);
  j.at("p").get_to(b.p);
  j.at("weights").get_to(b.weights);
  j.at("partition").get_to(b.partition);
}

inline void to_json(json& j, const BeliefMoments& m) {
  j = json{{"mean", m.mean}, {"variance", m.variance}};
}
inline void from_json(const json& j, BeliefMoments& m) {
  j.at("mean").get_to(m.mean);
  j.at("variance").get_to(m.variance);
}

inline void to_json(json& j, const OrderWitness& w) {
  j = json{{"h1", w.h1}, {"h2", w.h2}, {"lhs", w.lhs}, {"rhs", w.rhs}};
}
inline void from_json(const json& j, OrderWitness& w) {
  j.at("h1").get_to(w.h1);
  j.at("h2").get_to(w.h2);
  j.at("lhs").get_to(w.lhs);
  j.at("rhs").get_to(w.rhs);
}

inline void to_json(json& j, const OrderReport& r) {
  j = json{{"holds", r.holds}};
  if (r.witness) j["witness"] = *r.witness;
}
inline void from_json(const json& j, OrderReport& r) {
  j.at("holds").get_to(r.holds);
  if (j.contains("witness")) r.witness = j.at("witness").get<OrderWitness>();
  else r.witness.reset();
}

inline void to_json(json& j, const GameRule& rule) {
  if (const auto* bc = std::get_if<BeautyContest>(&rule)) {
    j = json{{"kind", "beauty"},
             {"anchor", bc->anchor},
             {"multiplier", bc->multiplier}};
  } else {
    const auto& lc = std::get<LinearComplements>(rule);
    j = json{{"kind", "linear"}, {"alpha", lc.alpha}};
  }
}
inline void from_json(const json& j, GameRule& rule) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "beauty") {
    rule = BeautyContest{j.at("anchor").get<double>(),
                         j.at("multiplier").get<double>()};
  } else if (kind == "linear") {
    rule = LinearComplements{j.at("alpha").get<double>()};
  } else {
    throw std::invalid_argument("GameRule: unknown kind " + kind);
  }
}

inline void to_json(json& j, const ActionProfile& prof) {
  j = json{{"p", prof.p}, {"rule", prof.rule}, {"actions", prof.actions}};
}
inline void from_json(const json& j, ActionProfile& prof) {
  j.at("p").get_to(prof.p);
  j.at("rule").get_to(prof.rule);
  j.at("actions").get_to(prof.actions);
}

inline void to_json(json& j, const PopulationStats& s) {
  j = json{{"mean_action", s.mean_action},
           {"variance_action", s.variance_action}};
}
inline void from_json(const json& j, PopulationStats& s) {
  j.at("mean_action").get_to(s.mean_action);
  j.at("variance_action").get_to(s.variance_action);
}

inline void to_json(json& j, const GridNormalization& n) {
  j = json{{"s_min", n.s_min}, {"s_max", n.s_max}, {"v_min", n.v_min},
           {"v_max", n.v_max}, {"l_min", n.l_min}, {"l_max", n.l_max},
           {"m_used", n.m_used}};
}
inline void from_json(const json& j, GridNormalization& n) {
  j.at("s_min").get_to(n.s_min);
  j.at("s_max").get_to(n.s_max);
  j.at("v_min").get_to(n.v_min);
  j.at("v_max").get_to(n.v_max);
  j.at("l_min").get_to(n.l_min);
  j.at("l_max").get_to(n.l_max);
  j.at("m_used").get_to(n.m_used);
}

inline void to_json(json& j, const WelfareCurve& c) {
  j = json{{"p_grid", c.p_grid},
           {"values", c.values},
           {"mean_curve", c.mean_curve},
           {"variance_curve", c.variance_curve},
           {"argmax_p", c.argmax_p},
           {"normalization", c.normalization}};
}
inline void from_json(const json& j, WelfareCurve& c) {
  j.at("p_grid").get_to(c.p_grid);
  j.at("values").get_to(c.values);
  j.at("mean_curve").get_to(c.mean_curve);
  j.at("variance_curve").get_to(c.variance_curve);
  j.at("argmax_p").get_to(c.argmax_p);
  j.at("normalization").get_to(c.normalization);
}

inline void to_json(json& j, const OtdResult& r) {
  json trace = json::array();
  for (const auto& [p, w] : r.trace) trace.push_back(json{{"p", p}, {"w", w}});
  j = json{{"p_star", r.p_star},
           {"welfare", r.welfare},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"trace", std::move(trace)}};
}
inline void from_json(const json& j, OtdResult& r) {
  j.at("p_star").get_to(r.p_star);
  j.at("welfare").get_to(r.welfare);
  j.at("iterations").get_to(r.iterations);
  j.at("converged").get_to(r.converged);
  r.trace.clear();
  for (const auto& item : j.at("trace"))
    r.trace.emplace_back(item.at("p").get<double>(), item.at("w").get<double>());
}

inline void to_json(json& j, const EffectivePFit& f) {
  j = json{{"agent_level", f.agent_level}, {"p_hat", f.p_hat}, {"kl", f.kl}};
}
inline void from_json(const json& j, EffectivePFit& f) {
  j.at("agent_level").get_to(f.agent_level);
  j.at("p_hat").get_to(f.p_hat);
  j.at("kl").get_to(f.kl);
}

inline void to_json(json& j, const TopologyRow& r) {
  j = json{{"beta", r.beta},
           {"mean_p_hat", r.mean_p_hat},
           {"mean_kl", r.mean_kl},
           {"n_eligible", r.n_eligible}};
}
inline void from_json(const json& j, TopologyRow& r) {
  j.at("beta").get_to(r.beta);
  r.mean_p_hat = detail::json_double(j.at("mean_p_hat"));
  r.mean_kl = detail::json_double(j.at("mean_kl"));
  j.at("n_eligible").get_to(r.n_eligible);
}

inline void to_json(json& j, const TopologyConfig& c) {
  j = json{{"n", c.n},
           {"tau", c.tau},
           {"beta_grid", c.beta_grid},
           {"delta", c.delta},
           {"seed", c.seed},
           {"p_search", c.p_search},
           {"min_neighbors", c.min_neighbors},
           {"k_max", c.k_max}};
}
inline void from_json(const json& j, TopologyConfig& c) {
  j.at("n").get_to(c.n);
  j.at("tau").get_to(c.tau);
  j.at("beta_grid").get_to(c.beta_grid);
  j.at("delta").get_to(c.delta);
  j.at("seed").get_to(c.seed);
  j.at("p_search").get_to(c.p_search);
  j.at("min_neighbors").get_to(c.min_neighbors);
  j.at("k_max").get_to(c.k_max);
}

inline void to_json(json& j, const TopologyReport& r) {
  j = json{{"config", r.config},
           {"rows", r.rows},
           {"class_pair_density", r.class_pair_density}};
}
inline void from_json(const json& j, TopologyReport& r) {
  j.at("config").get_to(r.config);
  j.at("rows").get_to(r.rows);
  r.class_pair_density.clear();
  for (const auto& row : j.at("class_pair_density"))
    r.class_pair_density.push_back(detail::json_double_vector(row));
}

inline void to_json(json& j, const LikelihoodSurface& s) {
  j = json{{"tau_grid", s.tau_grid},
           {"p_grid", s.p_grid},
           {"loglik", s.loglik},
           {"sigma", s.sigma},
           {"argmax_tau", s.argmax_tau},
           {"argmax_p", s.argmax_p}};
}
inline void from_json(const json& j, LikelihoodSurface& s) {
  j.at("tau_grid").get_to(s.tau_grid);
  j.at("p_grid").get_to(s.p_grid);
  j.at("loglik").get_to(s.loglik);
  j.at("sigma").get_to(s.sigma);
  j.at("argmax_tau").get_to(s.argmax_tau);
  j.at("argmax_p").get_to(s.argmax_p);
}

inline void to_json(json& j, const InfoShockEstimate& e) {
  j = json{{"tau_a", e.tau_a},
           {"tau_b", e.tau_b},
           {"ratio_raw", e.ratio_raw},
           {"p_endo", e.p_endo}};
}
inline void from_json(const json& j, InfoShockEstimate& e) {
  j.at("tau_a").get_to(e.tau_a);
  j.at("tau_b").get_to(e.tau_b);
  j.at("ratio_raw").get_to(e.ratio_raw);
  j.at("p_endo").get_to(e.p_endo);
}

inline void to_json(json& j, const InequalityCurve& c) {
  j = json{{"p_grid", c.p_grid},
           {"gini", c.gini},
           {"bucket_labels", clarity_bucket_labels()},
           {"relative_advantage", c.relative_advantage}};
}
inline void from_json(const json& j, InequalityCurve& c) {
  j.at("p_grid").get_to(c.p_grid);
  j.at("gini").get_to(c.gini);
  c.relative_advantage.clear();
  for (const auto& row : j.at("relative_advantage"))
    c.relative_advantage.push_back(detail::json_double_vector(row));
}

inline void to_json(json& j, const ClarityConfig& c) {
  j = json{{"n", c.n},       {"tau", c.tau},         {"lambda", c.lambda},
           {"m", c.m},       {"p_grid", c.p_grid},   {"mc_runs", c.mc_runs},
           {"seed", c.seed}, {"k_max", c.k_max},     {"anchor", c.anchor}};
}
inline void from_json(const json& j, ClarityConfig& c) {
  j.at("n").get_to(c.n);
  j.at("tau").get_to(c.tau);
  j.at("lambda").get_to(c.lambda);
  j.at("m").get_to(c.m);
  j.at("p_grid").get_to(c.p_grid);
  j.at("mc_runs").get_to(c.mc_runs);
  j.at("seed").get_to(c.seed);
  j.at("k_max").get_to(c.k_max);
  j.at("anchor").get_to(c.anchor);
}

// ---- CSV -----------------------------------------------------------------
// All CSV output goes through fmt_double (12 significant digits, '.' decimal,
// no locale dependence) so identical inputs give byte-identical files.

inline std::string to_csv(const ActionProfile& prof) {
  std::string out = "k,s_k\n";
  for (size_t k = 0; k < prof.actions.size(); ++k)
    out += std::to_string(k) + "," + fmt_double(prof.actions[k]) + "\n";
  return out;
}

inline std::string to_csv(const WelfareCurve& c) {
  std::string out = "p,S,V,W\n";
  for (size_t i = 0; i < c.p_grid.size(); ++i)
    out += fmt_double(c.p_grid[i]) + "," + fmt_double(c.mean_curve[i]) + "," +
           fmt_double(c.variance_curve[i]) + "," + fmt_double(c.values[i]) +
           "\n";
  return out;
}

inline std::string to_csv(const TopologyReport& r) {
  std::string out = "beta,mean_p_hat,mean_kl,n_eligible\n";
  for (const auto& row : r.rows)
    out += fmt_double(row.beta) + "," + fmt_double(row.mean_p_hat) + "," +
           fmt_double(row.mean_kl) + "," + std::to_string(row.n_eligible) +
           "\n";
  return out;
}

inline std::string to_csv(const LikelihoodSurface& s) {
  std::string out = "tau,p,loglik\n";
  for (size_t ti = 0; ti < s.tau_grid.size(); ++ti)
    for (size_t pi = 0; pi < s.p_grid.size(); ++pi)
      out += fmt_double(s.tau_grid[ti]) + "," + fmt_double(s.p_grid[pi]) +
             "," + fmt_double(s.loglik[ti][pi]) + "\n";
  return out;
}

inline std::string to_csv(const InequalityCurve& c) {
  std::string out = "p,gini";
  for (const auto& label : clarity_bucket_labels())
    out += ",rel_adv_" + label;
  out += "\n";
  for (size_t pi = 0; pi < c.p_grid.size(); ++pi) {
    out += fmt_double(c.p_grid[pi]) + "," + fmt_double(c.gini[pi]);
    for (size_t b = 0; b < c.relative_advantage.size(); ++b)
      out += "," + fmt_double(c.relative_advantage[b][pi]);
    out += "\n";
  }
  return out;
}

inline std::string curve_to_csv(
    const std::vector<std::pair<double, double>>& curve, const char* x_name,
    const char* y_name) {
  std::string out = std::string(x_name) + "," + y_name + "\n";
  for (const auto& [x, y] : curve)
    out += fmt_double(x) + "," + fmt_double(y) + "\n";
  return out;
}

}  // namespace cognet
