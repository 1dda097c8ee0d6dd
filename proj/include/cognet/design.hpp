#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cognet/belief.hpp"
#include "cognet/games.hpp"
#include "cognet/prior.hpp"
#include "cognet/util.hpp"

namespace cognet {

// Planner objectives over the transparency parameter p.

// Negative total quadratic loss around the endogenous target gamma * mean action.
struct QuadraticCoordination {
  double gamma = 2.0 / 3.0;
};

// (1 - S_hat) - lambda * V_hat: deter tacit coordination, mild volatility penalty.
struct Competition {
  double lambda = 0.25;
};

// 1 - L_hat where L = V + (1-m)^2 S^2: stability around the target m*S.
struct Stability {
  double m = 2.0 / 3.0;
};

// A * S_hat^alpha * (V_hat + eps)^beta - c_info * p^rho. The constants are a
// repo calibration; only the interior-optimum property is asserted.
struct Innovation {
  double A = 1.0;
  double alpha = 1.0;
  double beta = 0.5;
  double eps = 0.01;
  double c_info = 0.35;
  double rho = 2.0;
};

// Mean perceived sophistication minus a linear opacity cost c(1-p).
struct MeanSophisticationMinusOpacityCost {
  double c = 1.0;
};

using WelfareObjective =
    std::variant<QuadraticCoordination, Competition, Stability, Innovation,
                 MeanSophisticationMinusOpacityCost>;

inline void validate_objective(const WelfareObjective& obj) {
  if (const auto* q = std::get_if<QuadraticCoordination>(&obj)) {
    if (!(q->gamma > 0.0) || !(q->gamma < 1.0))
      throw std::invalid_argument("QuadraticCoordination: gamma must lie in (0,1)");
  } else if (const auto* c = std::get_if<Competition>(&obj)) {
    if (!(c->lambda >= 0.0))
      throw std::invalid_argument("Competition: lambda must be >= 0");
  } else if (const auto* s = std::get_if<Stability>(&obj)) {
    if (!(s->m > 0.0) || !(s->m < 1.0))
      throw std::invalid_argument("Stability: m must lie in (0,1)");
  } else if (const auto* in = std::get_if<Innovation>(&obj)) {
    if (!(in->alpha > 0.0) || !(in->beta > 0.0) || !(in->eps > 0.0) ||
        !(in->rho >= 1.0) || !(in->c_info >= 0.0))
      throw std::invalid_argument("Innovation: bad calibration constants");
  } else {
    const auto& m = std::get<MeanSophisticationMinusOpacityCost>(obj);
    if (!(m.c > 0.0))
      throw std::invalid_argument(
          "MeanSophisticationMinusOpacityCost: c must be positive");
  }
}

inline std::string objective_name(const WelfareObjective& obj) {
  switch (obj.index()) {
    case 0: return "quadratic_coordination";
    case 1: return "competition";
    case 2: return "stability";
    case 3: return "innovation";
    default: return "mean_sophistication";
  }
}

// Min-max ranges from pass 1 of a grid evaluation; hatted quantities are 0
// when a curve is constant.
struct GridNormalization {
  double s_min = 0.0, s_max = 0.0;
  double v_min = 0.0, v_max = 0.0;
  double l_min = 0.0, l_max = 0.0;
  double m_used = 2.0 / 3.0;  // target multiplier baked into the L curve

  static double unit(double x, double lo, double hi) {
    if (!(hi - lo > 1e-300)) return 0.0;
    return (x - lo) / (hi - lo);
  }
};

struct WelfareCurve {
  std::vector<double> p_grid;
  std::vector<double> values;
  std::vector<double> mean_curve;      // raw S(p)
  std::vector<double> variance_curve;  // raw V(p)
  double argmax_p = 0.0;
  GridNormalization normalization;
};

// -sum_k fhat(k) (s_k - gamma*sbar)^2 with sbar the fhat-weighted mean action.
inline double quadratic_loss_welfare(const std::vector<double>& actions,
                                     const std::vector<double>& fhat,
                                     double gamma) {
  double sbar = 0.0;
  for (size_t k = 0; k < actions.size(); ++k) sbar += fhat[k] * actions[k];
  double loss = 0.0;
  for (size_t k = 0; k < actions.size(); ++k) {
    const double d = actions[k] - gamma * sbar;
    loss += fhat[k] * d * d;
  }
  return -loss;
}

// fhat-weighted mean of E_gk[H]; level 0 holds no belief and contributes 0.
inline double mean_perceived_sophistication(const TruePrior& prior, double p) {
  const std::vector<double> f = prior.truncated_pmf();
  double total = 0.0;
  for (int k = 1; k <= prior.max_level(); ++k)
    total += f[k] * moments(belief(prior, k, p)).mean;
  return total;
}

inline double aggregate_belief_variance(const TruePrior& prior, double p) {
  const std::vector<double> f = prior.truncated_pmf();
  double total = 0.0;
  for (int k = 1; k <= prior.max_level(); ++k)
    total += f[k] * moments(belief(prior, k, p)).variance;
  return total;
}

inline double welfare_value(
    const TruePrior& prior, const GameRule& rule, const WelfareObjective& obj,
    double p, const std::optional<GridNormalization>& norm = std::nullopt) {
  validate_objective(obj);
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("welfare_value: p must lie in (0,1]");

  if (const auto* q = std::get_if<QuadraticCoordination>(&obj)) {
    const ActionProfile prof = action_profile(prior, rule, p);
    return quadratic_loss_welfare(prof.actions, prior.truncated_pmf(), q->gamma);
  }
  if (const auto* m = std::get_if<MeanSophisticationMinusOpacityCost>(&obj))
    return mean_perceived_sophistication(prior, p) - m->c * (1.0 - p);

  if (!norm)
    throw std::invalid_argument(
        "welfare_value: normalized objectives need a grid normalization");
  const ActionProfile prof = action_profile(prior, rule, p);
  const PopulationStats stats = population_stats(prof, prior);
  const double s_hat =
      GridNormalization::unit(stats.mean_action, norm->s_min, norm->s_max);
  const double v_hat =
      GridNormalization::unit(stats.variance_action, norm->v_min, norm->v_max);
  if (const auto* c = std::get_if<Competition>(&obj))
    return (1.0 - s_hat) - c->lambda * v_hat;
  if (const auto* s = std::get_if<Stability>(&obj)) {
    const double loss = stats.variance_action +
                        (1.0 - s->m) * (1.0 - s->m) * stats.mean_action *
                            stats.mean_action;
    return 1.0 - GridNormalization::unit(loss, norm->l_min, norm->l_max);
  }
  const auto& in = std::get<Innovation>(obj);
  return in.A * std::pow(s_hat, in.alpha) * std::pow(v_hat + in.eps, in.beta) -
         in.c_info * std::pow(p, in.rho);
}

// Pass 1 collects S, V, L over the grid and fixes the min-max normalization;
// pass 2 evaluates the objective. Argmax ties go to the larger p.
inline WelfareCurve welfare_curve(const TruePrior& prior, const GameRule& rule,
                                  const WelfareObjective& obj,
                                  const std::vector<double>& p_grid) {
  validate_objective(obj);
  require_grid_in_unit(p_grid, "welfare_curve");
  if (p_grid.size() < 2)
    throw std::invalid_argument("welfare_curve: grid needs at least 2 points");

  WelfareCurve curve;
  curve.p_grid = p_grid;
  const int n = static_cast<int>(p_grid.size());
  curve.mean_curve.resize(n);
  curve.variance_curve.resize(n);
  double m_used = 2.0 / 3.0;
  if (const auto* s = std::get_if<Stability>(&obj)) m_used = s->m;

  GridNormalization norm;
  norm.m_used = m_used;
  std::vector<double> loss(n);
  for (int i = 0; i < n; ++i) {
    const ActionProfile prof = action_profile(prior, rule, p_grid[i]);
    const PopulationStats stats = population_stats(prof, prior);
    curve.mean_curve[i] = stats.mean_action;
    curve.variance_curve[i] = stats.variance_action;
    loss[i] = stats.variance_action + (1.0 - m_used) * (1.0 - m_used) *
                                          stats.mean_action * stats.mean_action;
    if (i == 0) {
      norm.s_min = norm.s_max = stats.mean_action;
      norm.v_min = norm.v_max = stats.variance_action;
      norm.l_min = norm.l_max = loss[i];
    } else {
      norm.s_min = std::min(norm.s_min, stats.mean_action);
      norm.s_max = std::max(norm.s_max, stats.mean_action);
      norm.v_min = std::min(norm.v_min, stats.variance_action);
      norm.v_max = std::max(norm.v_max, stats.variance_action);
      norm.l_min = std::min(norm.l_min, loss[i]);
      norm.l_max = std::max(norm.l_max, loss[i]);
    }
  }
  curve.normalization = norm;

  curve.values.resize(n);
  int best = 0;
  for (int i = 0; i < n; ++i) {
    curve.values[i] = welfare_value(prior, rule, obj, p_grid[i], norm);
    if (curve.values[i] >= curve.values[best]) best = i;
  }
  curve.argmax_p = p_grid[best];
  return curve;
}

// Projected gradient ascent on the coordination welfare (per the OTD recipe):
// inner beauty-contest recursion under a Poisson(tau_hat) population,
// central-difference gradient, step, clamp to [0.01, 1].
struct OtdConfig {
  double epsilon = 1e-4;
  int max_iter = 500;
  double learning_rate = 0.1;
  double fd_step = 1e-3;
  double p_init = 0.5;
  int k_bar = kDefaultMaxLevel;
};

struct OtdResult {
  double p_star = 0.0;
  double welfare = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::pair<double, double>> trace;  // (p, W) per accepted iterate
};

namespace detail {
// Welfare evaluator used inside OTD. Gradient probes step slightly outside
// (0,1], so this evaluates the kernel formula directly instead of belief().
inline double otd_welfare(double p, double tau_hat, double gamma, int k_bar) {
  std::vector<double> log_f(k_bar + 1), s(k_bar + 1);
  for (int h = 0; h <= k_bar; ++h)
    log_f[h] = -tau_hat + h * std::log(tau_hat) - std::lgamma(h + 1.0);
  const double log_p = std::log(p);
  s[0] = 50.0;
  for (int k = 1; k <= k_bar; ++k) {
    double expected = 0.0, total = 0.0;
    for (int h = 0; h < k; ++h) {
      const double w = std::exp(log_f[h] + (k - h) * log_p);
      expected += w * s[h];
      total += w;
    }
    s[k] = gamma * expected / total;
  }
  std::vector<double> fhat(k_bar + 1);
  double f_total = 0.0;
  for (int k = 0; k <= k_bar; ++k) {
    fhat[k] = std::exp(log_f[k]);
    f_total += fhat[k];
  }
  for (double& v : fhat) v /= f_total;
  return quadratic_loss_welfare(s, fhat, gamma);
}
}  // namespace detail

inline OtdResult otd_optimize(double tau_hat, double gamma,
                              const OtdConfig& config = {}) {
  if (!(tau_hat > 0.0))
    throw std::invalid_argument("otd_optimize: tau_hat must be positive");
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::invalid_argument("otd_optimize: gamma must lie in (0,1)");
  if (!(config.epsilon > 0.0) || config.max_iter <= 0 ||
      !(config.learning_rate > 0.0) || !(config.fd_step > 0.0) ||
      !(config.p_init > 0.0) || config.p_init > 1.0 || config.k_bar < 1)
    throw std::invalid_argument("otd_optimize: bad config");

  const auto welfare_at = [&](double p) {
    return detail::otd_welfare(p, tau_hat, gamma, config.k_bar);
  };

  OtdResult result;
  // the ascent lives on [0.01, 1]; start inside it
  double p = std::max(0.01, std::min(1.0, config.p_init));
  result.trace.emplace_back(p, welfare_at(p));
  for (int t = 0; t < config.max_iter; ++t) {
    const double w_plus = welfare_at(p + config.fd_step);
    const double w_minus = welfare_at(p - config.fd_step);
    const double grad = (w_plus - w_minus) / (2.0 * config.fd_step);
    const double p_old = p;
    p = std::max(0.01, std::min(1.0, p + config.learning_rate * grad));
    result.iterations = t + 1;
    result.trace.emplace_back(p, welfare_at(p));
    if (std::abs(p - p_old) < config.epsilon) {
      result.converged = true;
      break;
    }
  }
  result.p_star = p;
  result.welfare = welfare_at(p);
  return result;
}

// sum_k fhat(k) Var_gk(H) - c*p: positive means the marginal benefit of
// opacity still exceeds its cost at this p. A sign change in (0,1) marks an
// interior candidate; callers classify the boundary cases.
inline double fo_condition_residual(const TruePrior& prior, double c, double p) {
  if (!(c > 0.0))
    throw std::invalid_argument("fo_condition_residual: c must be positive");
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("fo_condition_residual: p must lie in (0,1)");
  return aggregate_belief_variance(prior, p) - c * p;
}

// Responsiveness per unit of cognitive depth for the linear-best-response
// game: (alpha / (p*k)) * Var_gk(H).
inline double sensitivity_index(const TruePrior& prior, double alpha, int level,
                                double p) {
  if (prior.kind() != TruePrior::Kind::poisson)
    throw std::invalid_argument("sensitivity_index: prior must be Poisson");
  if (!(alpha > 0.0))
    throw std::invalid_argument("sensitivity_index: alpha must be positive");
  if (level < 1)
    throw std::invalid_argument("sensitivity_index: level must be >= 1");
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("sensitivity_index: p must lie in (0,1]");
  return alpha / (p * level) * moments(belief(prior, level, p)).variance;
}

}  // namespace cognet
