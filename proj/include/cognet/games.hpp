#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cognet/belief.hpp"
#include "cognet/prior.hpp"
#include "cognet/util.hpp"

namespace cognet {

// Guess-the-multiplier game: s_k = multiplier * E_k[opponent action],
// anchored by the nonstrategic level-0 action.
struct BeautyContest {
  double anchor = 50.0;
  double multiplier = 2.0 / 3.0;
};

// Linear strategic complements: s_k = alpha * E_gk[H], s_0 = 0.
struct LinearComplements {
  double alpha = 1.0;
};

using GameRule = std::variant<BeautyContest, LinearComplements>;

inline void validate_rule(const GameRule& rule) {
  if (const auto* bc = std::get_if<BeautyContest>(&rule)) {
    if (!(bc->multiplier > 0.0) || !(bc->multiplier < 1.0))
      throw std::invalid_argument("BeautyContest: multiplier must lie in (0,1)");
    if (!std::isfinite(bc->anchor))
      throw std::invalid_argument("BeautyContest: bad anchor");
  } else {
    const auto& lc = std::get<LinearComplements>(rule);
    if (!(lc.alpha > 0.0))
      throw std::invalid_argument("LinearComplements: alpha must be positive");
  }
}

inline std::string rule_name(const GameRule& rule) {
  return std::holds_alternative<BeautyContest>(rule) ? "beauty" : "linear";
}

struct ActionProfile {
  double p = 1.0;  // 0 marks the small-p limit profile
  GameRule rule;
  std::vector<double> actions;  // s_0..s_Kmax
};

struct PopulationStats {
  double mean_action = 0.0;      // S(p)
  double variance_action = 0.0;  // V(p)
};

namespace detail {
template <typename BeliefAt>
ActionProfile recurse_actions(const TruePrior& prior, const GameRule& rule,
                              double tag_p, BeliefAt&& belief_at) {
  validate_rule(rule);
  ActionProfile prof;
  prof.p = tag_p;
  prof.rule = rule;
  prof.actions.resize(prior.max_level() + 1);
  if (const auto* bc = std::get_if<BeautyContest>(&rule)) {
    prof.actions[0] = bc->anchor;
    for (int k = 1; k <= prior.max_level(); ++k) {
      const Belief b = belief_at(k);
      double expected = 0.0;
      for (int h = 0; h < k; ++h) expected += b.weights[h] * prof.actions[h];
      prof.actions[k] = bc->multiplier * expected;
    }
  } else {
    const auto& lc = std::get<LinearComplements>(rule);
    prof.actions[0] = 0.0;
    for (int k = 1; k <= prior.max_level(); ++k)
      prof.actions[k] = lc.alpha * moments(belief_at(k)).mean;
  }
  return prof;
}
}  // namespace detail

// Per-level equilibrium actions; s_k touches only s_0..s_{k-1}.
inline ActionProfile action_profile(const TruePrior& prior,
                                    const GameRule& rule, double p) {
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("action_profile: p must lie in (0,1]");
  return detail::recurse_actions(prior, rule, p,
                                 [&](int k) { return belief(prior, k, p); });
}

// Level-k regime: every agent best-responds to the level just below.
inline ActionProfile action_profile_limit_small_p(const TruePrior& prior,
                                                  const GameRule& rule) {
  return detail::recurse_actions(
      prior, rule, 0.0, [&](int k) { return belief_limit_small_p(prior, k); });
}

// f-weighted mean and variance of the actions, f renormalized over 0..Kmax.
inline PopulationStats population_stats(const ActionProfile& profile,
                                        const TruePrior& prior) {
  if (static_cast<int>(profile.actions.size()) != prior.max_level() + 1)
    throw std::invalid_argument(
        "population_stats: profile and prior truncation differ");
  const std::vector<double> f = prior.truncated_pmf();
  PopulationStats stats;
  for (int k = 0; k <= prior.max_level(); ++k)
    stats.mean_action += f[k] * profile.actions[k];
  for (int k = 0; k <= prior.max_level(); ++k) {
    const double d = profile.actions[k] - stats.mean_action;
    stats.variance_action += f[k] * d * d;
  }
  return stats;
}

// S*(p) per grid point for the escalation game. The beauty contest is
// excluded: its actions fall with sophistication and the monotonicity
// conclusion reverses there.
inline std::vector<std::pair<double, double>> aggregate_effort_curve(
    const TruePrior& prior, const GameRule& rule,
    const std::vector<double>& p_grid) {
  if (!std::holds_alternative<LinearComplements>(rule))
    throw std::invalid_argument(
        "aggregate_effort_curve: rule must be LinearComplements");
  require_grid_in_unit(p_grid, "aggregate_effort_curve");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(p_grid.size());
  for (double p : p_grid) {
    const ActionProfile prof = action_profile(prior, rule, p);
    curve.emplace_back(p, population_stats(prof, prior).mean_action);
  }
  return curve;
}

}  // namespace cognet
