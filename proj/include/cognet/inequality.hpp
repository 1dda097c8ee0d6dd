#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cognet/games.hpp"
#include "cognet/prior.hpp"
#include "cognet/rng.hpp"
#include "cognet/util.hpp"

namespace cognet {

// Weighted mean absolute difference over twice the weighted mean. Weights
// default to uniform; all-zero values count as perfect equality.
inline double gini(const std::vector<double>& values,
                   const std::vector<double>* weights = nullptr) {
  if (values.empty()) throw std::invalid_argument("gini: empty values");
  if (weights && weights->size() != values.size())
    throw std::invalid_argument("gini: weights length mismatch");
  for (double v : values)
    if (!(v >= 0.0)) throw std::invalid_argument("gini: values must be >= 0");

  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return values[a] < values[b]; });

  double w_total = 0.0;
  if (weights) {
    for (double w : *weights) {
      if (!(w >= 0.0)) throw std::invalid_argument("gini: weights must be >= 0");
      w_total += w;
    }
    if (!(w_total > 0.0)) throw std::invalid_argument("gini: zero total weight");
  } else {
    w_total = static_cast<double>(n);
  }

  // sum_{i<j} 2 w_i w_j (x_j - x_i) accumulated over the sorted order.
  double mean = 0.0, pair_sum = 0.0, w_prefix = 0.0, wx_prefix = 0.0;
  for (size_t idx : order) {
    const double w = (weights ? (*weights)[idx] : 1.0) / w_total;
    const double x = values[idx];
    pair_sum += 2.0 * w * (x * w_prefix - wx_prefix);
    w_prefix += w;
    wx_prefix += w * x;
    mean += w * x;
  }
  if (!(mean > 0.0)) return 0.0;
  return pair_sum / (2.0 * mean);
}

struct ClarityConfig {
  int n = 2000;
  double tau = 1.5;
  double lambda = 0.2;     // payoff decay
  double m = 2.0 / 3.0;    // target multiplier
  std::vector<double> p_grid = linspace(0.01, 1.0, 50);
  int mc_runs = 1000;
  std::uint64_t seed = 1;
  int k_max = kDefaultMaxLevel;
  double anchor = 50.0;
  int threads = 0;
};

inline const std::vector<std::string>& clarity_bucket_labels() {
  static const std::vector<std::string> labels = {"0", "1", "2",
                                                  "3", "4", "5+"};
  return labels;
}

struct InequalityCurve {
  std::vector<double> p_grid;
  std::vector<double> gini;  // mean payoff Gini per p
  // relative_advantage[bucket][p]: payoff share over population share,
  // buckets {0,1,2,3,4,5+}.
  std::vector<std::vector<double>> relative_advantage;
};

// Monte Carlo transparency sweep. Level-0 agents randomize uniformly on
// [0, anchor*2]; higher levels play the deterministic profile. The run-index
// substream is reused across p so every p sees the same sampled population.
inline InequalityCurve cost_of_clarity_experiment(const ClarityConfig& config) {
  if (config.n < 1 || config.mc_runs < 1)
    throw std::invalid_argument("cost_of_clarity_experiment: bad config");
  require_grid_in_unit(config.p_grid, "cost_of_clarity_experiment");
  if (!(config.lambda > 0.0) || !(config.m > 0.0) || !(config.m < 1.0))
    throw std::invalid_argument("cost_of_clarity_experiment: bad lambda or m");

  const TruePrior prior = TruePrior::poisson(config.tau, config.k_max);
  const DiscreteSampler sampler(prior.truncated_pmf());
  const int np = static_cast<int>(config.p_grid.size());
  const int nb = static_cast<int>(clarity_bucket_labels().size());

  std::vector<ActionProfile> profiles;
  profiles.reserve(np);
  for (double p : config.p_grid)
    profiles.push_back(
        action_profile(prior, BeautyContest{config.anchor, config.m}, p));

  // per-run results, reduced afterwards in run order
  std::vector<std::vector<double>> run_gini(
      config.mc_runs, std::vector<double>(np, 0.0));
  std::vector<std::vector<double>> run_adv(
      config.mc_runs, std::vector<double>(nb * np, 0.0));
  std::vector<std::vector<char>> run_adv_ok(
      config.mc_runs, std::vector<char>(nb * np, 0));

  parallel_for(config.mc_runs, config.threads, [&](int run) {
    std::vector<double> actions(config.n), payoffs(config.n);
    std::vector<int> levels(config.n);
    for (int pi = 0; pi < np; ++pi) {
      // fresh copy of the run substream per p: common random numbers
      Rng rng = Rng::substream(config.seed, "clarity", run);
      double mean_action = 0.0;
      for (int i = 0; i < config.n; ++i) {
        levels[i] = sampler(rng);
        actions[i] = levels[i] == 0 ? rng.uniform(0.0, 2.0 * config.anchor)
                                    : profiles[pi].actions[levels[i]];
        mean_action += actions[i];
      }
      mean_action /= config.n;
      const double target = config.m * mean_action;
      double payoff_total = 0.0;
      for (int i = 0; i < config.n; ++i) {
        payoffs[i] = std::exp(-config.lambda * std::abs(actions[i] - target));
        payoff_total += payoffs[i];
      }
      run_gini[run][pi] = gini(payoffs);

      double bucket_pay[6] = {0, 0, 0, 0, 0, 0};
      int bucket_count[6] = {0, 0, 0, 0, 0, 0};
      for (int i = 0; i < config.n; ++i) {
        const int b = std::min(levels[i], 5);
        bucket_pay[b] += payoffs[i];
        ++bucket_count[b];
      }
      for (int b = 0; b < nb; ++b) {
        if (bucket_count[b] == 0) continue;
        const double pay_share = bucket_pay[b] / payoff_total;
        const double pop_share = static_cast<double>(bucket_count[b]) / config.n;
        run_adv[run][b * np + pi] = pay_share / pop_share;
        run_adv_ok[run][b * np + pi] = 1;
      }
    }
  });

  InequalityCurve curve;
  curve.p_grid = config.p_grid;
  curve.gini.assign(np, 0.0);
  curve.relative_advantage.assign(nb, std::vector<double>(np, 0.0));
  for (int pi = 0; pi < np; ++pi) {
    for (int run = 0; run < config.mc_runs; ++run)
      curve.gini[pi] += run_gini[run][pi];
    curve.gini[pi] /= config.mc_runs;
  }
  for (int b = 0; b < nb; ++b) {
    for (int pi = 0; pi < np; ++pi) {
      double total = 0.0;
      int hits = 0;
      for (int run = 0; run < config.mc_runs; ++run) {
        if (run_adv_ok[run][b * np + pi]) {
          total += run_adv[run][b * np + pi];
          ++hits;
        }
      }
      curve.relative_advantage[b][pi] =
          hits ? total / hits : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return curve;
}

// Deterministic per-level losses L_k = (s_k - gamma*sbar)^2 under the
// gamma-multiplier contest; Gini taken with the truncated f as weights.
inline double loss_gini(const TruePrior& prior, double gamma, double p,
                        double anchor = 50.0) {
  const ActionProfile prof =
      action_profile(prior, BeautyContest{anchor, gamma}, p);
  const std::vector<double> f = prior.truncated_pmf();
  double sbar = 0.0;
  for (size_t k = 0; k < prof.actions.size(); ++k)
    sbar += f[k] * prof.actions[k];
  std::vector<double> losses(prof.actions.size());
  for (size_t k = 0; k < prof.actions.size(); ++k) {
    const double d = prof.actions[k] - gamma * sbar;
    losses[k] = d * d;
  }
  return gini(losses, &f);
}

inline std::vector<std::pair<double, double>> loss_gini_curve(
    const TruePrior& prior, double gamma, const std::vector<double>& p_grid,
    double anchor = 50.0) {
  require_grid_in_unit(p_grid, "loss_gini_curve");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(p_grid.size());
  for (double p : p_grid)
    curve.emplace_back(p, loss_gini(prior, gamma, p, anchor));
  return curve;
}

}  // namespace cognet
