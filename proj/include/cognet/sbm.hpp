#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cognet/belief.hpp"
#include "cognet/prior.hpp"
#include "cognet/rng.hpp"
#include "cognet/util.hpp"

namespace cognet {

// Cognitive-distance block model: nodes carry sampled levels and each
// unordered pair links with probability delta * exp(-beta * |k_i - k_j|).
struct SbmGraph {
  int n = 0;
  double tau = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  int max_level = kDefaultMaxLevel;
  std::vector<int> levels;
  std::vector<std::vector<int>> adjacency;
};

inline SbmGraph generate_sbm(int n, double tau, double beta, double delta,
                             std::uint64_t seed,
                             int k_max = kDefaultMaxLevel) {
  if (n < 2) throw std::invalid_argument("generate_sbm: need n >= 2");
  if (!(tau > 0.0)) throw std::invalid_argument("generate_sbm: tau must be > 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("generate_sbm: beta must be >= 0");
  if (!(delta > 0.0) || delta > 1.0)
    throw std::invalid_argument("generate_sbm: delta must lie in (0,1]");

  SbmGraph g;
  g.n = n;
  g.tau = tau;
  g.beta = beta;
  g.delta = delta;
  g.seed = seed;
  g.max_level = k_max;

  const TruePrior prior = TruePrior::poisson(tau, k_max);
  const DiscreteSampler sampler(prior.truncated_pmf());
  Rng rng = Rng::substream(seed, "sbm", 0);

  g.levels.resize(n);
  for (int i = 0; i < n; ++i) g.levels[i] = sampler(rng);

  std::vector<double> decay(k_max + 1);
  for (int d = 0; d <= k_max; ++d) decay[d] = delta * std::exp(-beta * d);

  g.adjacency.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int dist = std::abs(g.levels[i] - g.levels[j]);
      if (rng.uniform() < decay[dist]) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  }
  return g;
}

// Normalized histogram of neighbor levels h < own level; neighbors at or
// above the agent's level are censored out. Empty after censoring -> nullopt
// (the agent is skipped in aggregates).
inline std::optional<std::vector<double>> empirical_neighbor_belief(
    const SbmGraph& g, int agent) {
  if (agent < 0 || agent >= g.n)
    throw std::invalid_argument("empirical_neighbor_belief: bad agent index");
  const int k = g.levels[agent];
  if (k < 1) return std::nullopt;
  std::vector<double> hist(k, 0.0);
  double count = 0.0;
  for (int j : g.adjacency[agent]) {
    if (g.levels[j] < k) {
      hist[g.levels[j]] += 1.0;
      count += 1.0;
    }
  }
  if (count == 0.0) return std::nullopt;
  for (double& v : hist) v /= count;
  return hist;
}

struct EffectivePFit {
  int agent_level = 0;
  double p_hat = 1.0;
  double kl = 0.0;
};

// Exhaustive grid minimization of KL(empirical || g_k(.; p)); ties break
// toward the larger p.
inline EffectivePFit estimate_effective_p(const std::vector<double>& empirical,
                                          const TruePrior& prior, int level,
                                          const std::vector<double>& p_search) {
  if (static_cast<int>(empirical.size()) != level)
    throw std::invalid_argument(
        "estimate_effective_p: empirical support must be {0..level-1}");
  require_grid_in_unit(p_search, "estimate_effective_p");
  double total = 0.0;
  for (double v : empirical) {
    if (!(v >= 0.0))
      throw std::invalid_argument("estimate_effective_p: negative mass");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("estimate_effective_p: empirical not a pmf");

  EffectivePFit fit;
  fit.agent_level = level;
  double best = std::numeric_limits<double>::infinity();
  for (double p : p_search) {
    const Belief model = belief(prior, level, p);
    double kl = 0.0;
    for (int h = 0; h < level; ++h) {
      if (empirical[h] > 0.0)
        kl += empirical[h] * (std::log(empirical[h]) - std::log(model.weights[h]));
    }
    if (kl <= best) {
      best = kl;
      fit.p_hat = p;
    }
  }
  fit.kl = std::max(0.0, best);
  return fit;
}

inline std::vector<double> default_p_search() {
  std::vector<double> grid(100);
  for (int i = 0; i < 100; ++i) grid[i] = (i + 1) / 100.0;
  return grid;
}

struct TopologyConfig {
  int n = 2000;
  double tau = 3.0;
  std::vector<double> beta_grid = {0.0, 0.5, 1.0, 2.0, 4.0};
  double delta = 0.05;
  std::uint64_t seed = 1;
  std::vector<double> p_search = default_p_search();
  int min_neighbors = 10;  // censored-sample size needed for a stable fit
  int k_max = kDefaultMaxLevel;
  int threads = 0;
};

struct TopologyRow {
  double beta = 0.0;
  double mean_p_hat = 0.0;  // NaN when no agent qualifies
  double mean_kl = 0.0;
  int n_eligible = 0;
};

struct TopologyReport {
  TopologyConfig config;
  std::vector<TopologyRow> rows;
  // Realized edge frequency between level classes, one (k_max+1)^2 matrix
  // per beta, row-major; NaN where a class pair has no possible pairs.
  std::vector<std::vector<double>> class_pair_density;
};

inline TopologyReport topology_mapping_experiment(const TopologyConfig& config) {
  if (config.beta_grid.empty())
    throw std::invalid_argument("topology_mapping_experiment: empty beta grid");
  TopologyReport report;
  report.config = config;
  const int nb = static_cast<int>(config.beta_grid.size());
  report.rows.resize(nb);
  report.class_pair_density.resize(nb);
  const TruePrior prior = TruePrior::poisson(config.tau, config.k_max);

  parallel_for(nb, config.threads, [&](int bi) {
    const double beta = config.beta_grid[bi];
    const SbmGraph g =
        generate_sbm(config.n, config.tau, beta, config.delta,
                     splitmix64(config.seed) + static_cast<std::uint64_t>(bi),
                     config.k_max);

    TopologyRow row;
    row.beta = beta;
    double sum_p = 0.0, sum_kl = 0.0;
    for (int i = 0; i < g.n; ++i) {
      if (g.levels[i] < 2) continue;
      int censored = 0;
      for (int j : g.adjacency[i])
        if (g.levels[j] < g.levels[i]) ++censored;
      if (censored < config.min_neighbors) continue;
      const auto empirical = empirical_neighbor_belief(g, i);
      if (!empirical) continue;
      const EffectivePFit fit =
          estimate_effective_p(*empirical, prior, g.levels[i], config.p_search);
      sum_p += fit.p_hat;
      sum_kl += fit.kl;
      ++row.n_eligible;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.mean_p_hat = row.n_eligible ? sum_p / row.n_eligible : nan;
    row.mean_kl = row.n_eligible ? sum_kl / row.n_eligible : nan;
    report.rows[bi] = row;

    // class-pair edge frequencies
    const int classes = config.k_max + 1;
    std::vector<double> count(classes, 0.0);
    for (int lvl : g.levels) count[lvl] += 1.0;
    std::vector<double> edges(classes * classes, 0.0);
    for (int i = 0; i < g.n; ++i) {
      for (int j : g.adjacency[i]) {
        if (j > i) {
          edges[g.levels[i] * classes + g.levels[j]] += 1.0;
          if (g.levels[i] != g.levels[j])
            edges[g.levels[j] * classes + g.levels[i]] += 1.0;
        }
      }
    }
    std::vector<double> density(classes * classes,
                                std::numeric_limits<double>::quiet_NaN());
    for (int a = 0; a < classes; ++a) {
      for (int b = 0; b < classes; ++b) {
        const double pairs =
            (a == b) ? count[a] * (count[a] - 1.0) / 2.0 : count[a] * count[b];
        if (pairs > 0.0) density[a * classes + b] = edges[a * classes + b] / pairs;
      }
    }
    report.class_pair_density[bi] = std::move(density);
  });
  return report;
}

}  // namespace cognet
