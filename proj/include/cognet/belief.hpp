#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cognet/prior.hpp"

namespace cognet {

// Subjective belief of a level-k agent over the levels below it,
// g_k(h) proportional to p^(k-h) * f(h) on {0..k-1}. Zero mass at or above
// the agent's own level (overconfidence).
struct Belief {
  int level = 1;
  double p = 1.0;  // transparency; 0 marks the small-p limit object
  std::vector<double> weights;
  double partition = 0.0;  // Z_k(p); may underflow to 0 for extreme (p, k)

  bool is_small_p_limit() const { return p == 0.0; }
};

struct BeliefMoments {
  double mean = 0.0;
  double variance = 0.0;
};

inline Belief belief(const TruePrior& prior, int level, double p) {
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("belief: p must lie in (0,1]");
  if (level < 1)
    throw std::invalid_argument("belief: level-0 agents hold no belief");
  if (level > prior.max_level() + 1)
    throw std::invalid_argument("belief: level exceeds prior truncation + 1");

  // p^k cancels against the normalization, so work with
  // log f(h) - h*log p and normalize softmax-style. Stable at small p.
  const double log_p = std::log(p);
  std::vector<double> logw(level);
  for (int h = 0; h < level; ++h) logw[h] = prior.log_mass(h) - h * log_p;
  const double peak = *std::max_element(logw.begin(), logw.end());

  Belief b;
  b.level = level;
  b.p = p;
  b.weights.resize(level);
  double total = 0.0;
  for (int h = 0; h < level; ++h) {
    b.weights[h] = std::exp(logw[h] - peak);
    total += b.weights[h];
  }
  for (double& w : b.weights) w /= total;
  // Z_k(p) = p^k * sum_h exp(log f(h) - h log p)
  b.partition = std::exp(level * log_p + peak + std::log(total));
  return b;
}

// p -> 0 limit: all mass on the level immediately below the agent.
inline Belief belief_limit_small_p(const TruePrior& prior, int level) {
  if (level < 1)
    throw std::invalid_argument(
        "belief_limit_small_p: level-0 agents hold no belief");
  if (level > prior.max_level() + 1)
    throw std::invalid_argument(
        "belief_limit_small_p: level exceeds prior truncation + 1");
  Belief b;
  b.level = level;
  b.p = 0.0;
  b.weights.assign(level, 0.0);
  b.weights[level - 1] = 1.0;
  b.partition = 0.0;
  return b;
}

inline BeliefMoments moments(const Belief& b) {
  BeliefMoments m;
  for (int h = 0; h < b.level; ++h) m.mean += h * b.weights[h];
  for (int h = 0; h < b.level; ++h) {
    const double d = h - m.mean;
    m.variance += b.weights[h] * d * d;
  }
  m.variance = std::max(0.0, m.variance);
  return m;
}

// d ln g_k(h) / dp = (1/p) (E[H] - h)
inline double score(const Belief& b, int h) {
  if (b.is_small_p_limit())
    throw std::invalid_argument("score: undefined in the small-p limit");
  if (h < 0 || h >= b.level)
    throw std::invalid_argument("score: h outside belief support");
  return (moments(b).mean - h) / b.p;
}

// d E[H] / dp = -(1/p) Var(H); nonpositive for every belief.
inline double sensitivity(const Belief& b) {
  if (b.is_small_p_limit()) return 0.0;  // point mass, zero variance
  return -moments(b).variance / b.p;
}

// Var(H) / E[k - H]: elasticity of the expected remaining depth in p.
inline double elasticity(const Belief& b) {
  const BeliefMoments m = moments(b);
  return m.variance / (b.level - m.mean);
}

}  // namespace cognet
