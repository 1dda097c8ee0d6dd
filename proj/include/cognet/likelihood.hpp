#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cognet/games.hpp"
#include "cognet/prior.hpp"
#include "cognet/rng.hpp"
#include "cognet/util.hpp"

namespace cognet {

// Draw n agents: level from the truncated prior, action from the equilibrium
// profile at p, plus Gaussian observation noise when sigma > 0.
inline std::vector<std::pair<int, double>> sample_population_actions(
    const TruePrior& prior, const GameRule& rule, double p, int n,
    double sigma, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_population_actions: n must be >= 1");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("sample_population_actions: sigma must be >= 0");
  const ActionProfile prof = action_profile(prior, rule, p);
  const DiscreteSampler sampler(prior.truncated_pmf());
  Rng rng = Rng::substream(seed, "actions", 0);
  std::vector<std::pair<int, double>> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int level = sampler(rng);
    double action = prof.actions[level];
    if (sigma > 0.0) action += sigma * rng.normal();
    out.emplace_back(level, action);
  }
  return out;
}

struct LikelihoodSurface {
  std::vector<double> tau_grid;
  std::vector<double> p_grid;
  std::vector<std::vector<double>> loglik;  // [tau][p]
  double sigma = 0.0;
  double argmax_tau = 0.0;
  double argmax_p = 0.0;
};

inline std::vector<double> default_tau_grid(double step = 0.05) {
  std::vector<double> grid;
  for (double t = 0.5; t <= 5.0 + 1e-9; t += step) grid.push_back(t);
  return grid;
}

inline std::vector<double> default_identify_p_grid(double step = 0.02) {
  std::vector<double> grid;
  for (double p = 0.1; p <= 1.0 + 1e-9; p += step)
    grid.push_back(std::min(p, 1.0));
  return grid;
}

namespace detail {
inline double mixture_loglik(const std::vector<double>& data,
                             const std::vector<double>& actions,
                             const std::vector<double>& fhat, double sigma) {
  const double inv_sigma = 1.0 / sigma;
  const double norm = inv_sigma / std::sqrt(2.0 * 3.14159265358979323846);
  double total = 0.0;
  for (double a : data) {
    double mix = 0.0;
    for (size_t k = 0; k < actions.size(); ++k) {
      const double z = (a - actions[k]) * inv_sigma;
      mix += fhat[k] * norm * std::exp(-0.5 * z * z);
    }
    total += std::log(std::max(mix, 1e-300));
  }
  return total;
}
}  // namespace detail

// Brute-force grid search over (tau, p): per cell, the likelihood of every
// observation is a Gaussian mixture over the per-level actions.
inline LikelihoodSurface loglik_surface(const std::vector<double>& data,
                                        const std::vector<double>& tau_grid,
                                        const std::vector<double>& p_grid,
                                        double sigma,
                                        const GameRule& rule = BeautyContest{},
                                        int k_max = kDefaultMaxLevel,
                                        int threads = 0) {
  if (data.empty()) throw std::invalid_argument("loglik_surface: no data");
  if (!(sigma > 0.0)) throw std::invalid_argument("loglik_surface: sigma must be > 0");
  if (tau_grid.empty() || p_grid.empty())
    throw std::invalid_argument("loglik_surface: empty grid");

  LikelihoodSurface surf;
  surf.tau_grid = tau_grid;
  surf.p_grid = p_grid;
  surf.sigma = sigma;
  const int nt = static_cast<int>(tau_grid.size());
  const int np = static_cast<int>(p_grid.size());
  surf.loglik.assign(nt, std::vector<double>(np, 0.0));

  parallel_for(nt, threads, [&](int ti) {
    const TruePrior prior = TruePrior::poisson(tau_grid[ti], k_max);
    const std::vector<double> fhat = prior.truncated_pmf();
    for (int pi = 0; pi < np; ++pi) {
      const ActionProfile prof = action_profile(prior, rule, p_grid[pi]);
      surf.loglik[ti][pi] =
          detail::mixture_loglik(data, prof.actions, fhat, sigma);
    }
  });

  int best_t = 0, best_p = 0;
  for (int ti = 0; ti < nt; ++ti)
    for (int pi = 0; pi < np; ++pi)
      if (surf.loglik[ti][pi] > surf.loglik[best_t][best_p]) {
        best_t = ti;
        best_p = pi;
      }
  surf.argmax_tau = tau_grid[best_t];
  surf.argmax_p = p_grid[best_p];
  return surf;
}

// MLE of tau under the standard hierarchy model (p pinned to 1).
inline double fit_tau_standard_ch(const std::vector<double>& data,
                                  const std::vector<double>& tau_grid,
                                  double sigma,
                                  const GameRule& rule = BeautyContest{},
                                  int k_max = kDefaultMaxLevel) {
  if (data.empty()) throw std::invalid_argument("fit_tau_standard_ch: no data");
  double best_tau = tau_grid.at(0);
  double best_ll = -std::numeric_limits<double>::infinity();
  for (double tau : tau_grid) {
    const TruePrior prior = TruePrior::poisson(tau, k_max);
    const ActionProfile prof = action_profile(prior, rule, 1.0);
    const double ll = detail::mixture_loglik(data, prof.actions,
                                             prior.truncated_pmf(), sigma);
    if (ll > best_ll) {
      best_ll = ll;
      best_tau = tau;
    }
  }
  return best_tau;
}

struct InfoShockEstimate {
  double tau_a = 0.0;   // fit on the global-information block
  double tau_b = 0.0;   // misspecified standard fit on the local block
  double ratio_raw = 0.0;  // tau_a / tau_b before clipping
  double p_endo = 0.0;     // ratio clipped into (0,1]
};

// Two-block identification: both blocks are fit with p fixed at 1; the
// transparency of the local block is the ratio of the fitted sophistications.
inline InfoShockEstimate info_shock_estimate(
    const std::vector<double>& data_a, const std::vector<double>& data_b,
    const std::vector<double>& tau_grid, double sigma,
    const GameRule& rule = BeautyContest{}, int k_max = kDefaultMaxLevel) {
  if (data_a.empty() || data_b.empty())
    throw std::invalid_argument("info_shock_estimate: empty block");
  if (!(sigma > 0.0))
    throw std::invalid_argument("info_shock_estimate: sigma must be > 0");
  InfoShockEstimate est;
  est.tau_a = fit_tau_standard_ch(data_a, tau_grid, sigma, rule, k_max);
  est.tau_b = fit_tau_standard_ch(data_b, tau_grid, sigma, rule, k_max);
  est.ratio_raw = est.tau_a / est.tau_b;
  est.p_endo = std::min(1.0, est.ratio_raw);
  return est;
}

}  // namespace cognet
