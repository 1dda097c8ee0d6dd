#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cognet/belief.hpp"
#include "cognet/prior.hpp"

namespace cognet {

// Location of the first failure of an order property, with the two values
// that violate it. h2 is -1 for single-index checks.
struct OrderWitness {
  int h1 = -1;
  int h2 = -1;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct OrderReport {
  bool holds = true;
  std::optional<OrderWitness> witness;

  static OrderReport pass() { return {}; }
  static OrderReport fail(OrderWitness w) { return {false, w}; }
};

namespace detail {
inline void require_pmf(const std::vector<double>& dist, const char* what,
                        bool strictly_positive) {
  if (dist.empty()) throw std::invalid_argument(std::string(what) + ": empty pmf");
  double total = 0.0;
  for (double v : dist) {
    if (!std::isfinite(v) || v < 0.0 || (strictly_positive && v <= 0.0))
      throw std::invalid_argument(std::string(what) + ": invalid pmf mass");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(what) + ": pmf does not sum to 1");
}
}  // namespace detail

// dist(h)^2 >= dist(h-1) dist(h+1), up to a relative fp tolerance.
inline OrderReport check_log_concavity(const std::vector<double>& dist) {
  detail::require_pmf(dist, "check_log_concavity", /*strictly_positive=*/true);
  for (int h = 1; h + 1 < static_cast<int>(dist.size()); ++h) {
    const double lhs = dist[h] * dist[h];
    const double rhs = dist[h - 1] * dist[h + 1];
    if (lhs < rhs * (1.0 - 1e-10))
      return OrderReport::fail({h, -1, lhs, rhs});
  }
  return OrderReport::pass();
}

// Likelihood ratio g_k(.|p_lo)/g_k(.|p_hi) must be strictly increasing in h.
inline OrderReport check_mlrp_in_p(const TruePrior& prior, int level,
                                   double p_hi, double p_lo) {
  if (!(p_lo > 0.0) || !(p_lo < p_hi) || p_hi > 1.0)
    throw std::invalid_argument("check_mlrp_in_p: need 0 < p_lo < p_hi <= 1");
  if (level < 2)
    throw std::invalid_argument("check_mlrp_in_p: level must be >= 2");
  const Belief lo = belief(prior, level, p_lo);
  const Belief hi = belief(prior, level, p_hi);
  double prev = lo.weights[0] / hi.weights[0];
  for (int h = 1; h < level; ++h) {
    const double ratio = lo.weights[h] / hi.weights[h];
    // fp-safe strictness: the increment must clear a margin relative to the
    // local ratio scale, which can span many orders of magnitude
    const double margin =
        1e-12 * std::max(ratio, std::numeric_limits<double>::min());
    if (!(ratio - prev > margin))
      return OrderReport::fail({h - 1, h, prev, ratio});
    prev = ratio;
  }
  return OrderReport::pass();
}

// First-order stochastic dominance of dist_hi over dist_lo:
// CDF(dist_hi) <= CDF(dist_lo) pointwise on the padded common support.
inline OrderReport check_fosd(std::vector<double> dist_hi,
                              std::vector<double> dist_lo) {
  detail::require_pmf(dist_hi, "check_fosd", /*strictly_positive=*/false);
  detail::require_pmf(dist_lo, "check_fosd", /*strictly_positive=*/false);
  const size_t n = std::max(dist_hi.size(), dist_lo.size());
  dist_hi.resize(n, 0.0);
  dist_lo.resize(n, 0.0);
  double cdf_hi = 0.0, cdf_lo = 0.0;
  for (size_t h = 0; h < n; ++h) {
    cdf_hi += dist_hi[h];
    cdf_lo += dist_lo[h];
    if (cdf_hi > cdf_lo + 1e-12)
      return OrderReport::fail({static_cast<int>(h), -1, cdf_hi, cdf_lo});
  }
  return OrderReport::pass();
}

// Expanding the hierarchy from level-1 to level leaves the relative odds of
// the previously visible types unchanged and adds strictly positive mass at
// the newly visible top type.
inline OrderReport check_hierarchy_expansion(const TruePrior& prior, int level,
                                             double p) {
  if (level < 2)
    throw std::invalid_argument("check_hierarchy_expansion: level must be >= 2");
  const Belief narrow = belief(prior, level - 1, p);  // support {0..level-2}
  const Belief wide = belief(prior, level, p);        // support {0..level-1}
  for (int h1 = 0; h1 + 1 <= level - 2; ++h1) {
    for (int h2 = h1 + 1; h2 <= level - 2; ++h2) {
      const double odds_wide = wide.weights[h2] / wide.weights[h1];
      const double odds_narrow = narrow.weights[h2] / narrow.weights[h1];
      if (std::abs(odds_wide - odds_narrow) >
          1e-10 * std::max(std::abs(odds_wide), std::abs(odds_narrow)))
        return OrderReport::fail({h1, h2, odds_wide, odds_narrow});
    }
  }
  if (!(wide.weights[level - 1] > 0.0))
    return OrderReport::fail({level - 1, -1, wide.weights[level - 1], 0.0});
  return OrderReport::pass();
}

// TV(g_k, Poisson(tau/p)) with g_k extended by zeros above its support.
// For a Poisson prior g_k(h) = pois(h; tau/p) / F(k-1) on {0..k-1}, so the
// half-sum of absolute differences collapses to the upper tail mass
// P(Pois(tau/p) >= k). Summing that tail forward keeps the value exact where
// direct |g - pois| summation would drown in cancellation noise.
inline double tv_distance_to_poisson_limit(const TruePrior& prior, int level,
                                           double p) {
  if (prior.kind() != TruePrior::Kind::poisson)
    throw std::invalid_argument(
        "tv_distance_to_poisson_limit: prior must be Poisson");
  if (level < 1)
    throw std::invalid_argument("tv_distance_to_poisson_limit: level must be >= 1");
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("tv_distance_to_poisson_limit: p must lie in (0,1]");
  const double lambda = prior.tau() / p;
  // term = pois(level; lambda), then advance with the pmf recurrence.
  double log_term =
      -lambda + level * std::log(lambda) - std::lgamma(level + 1.0);
  double term = std::exp(log_term);
  double tail = 0.0;
  for (int h = level; ; ++h) {
    tail += term;
    term *= lambda / (h + 1);
    if (h > lambda && (term < tail * 1e-18 || term < 1e-320)) break;
    if (h > level + 100000) break;  // unreachable at sane parameters
  }
  return std::min(tail, 1.0);
}

}  // namespace cognet
