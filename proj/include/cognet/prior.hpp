#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cognet/util.hpp"

namespace cognet {

// Global truncation bound: all supports run over levels 0..max_level.
inline constexpr int kDefaultMaxLevel = 20;

// Objective distribution f(h) of cognitive levels, strictly positive on
// 0..max_level. Poisson and Geometric keep their untruncated pmf values;
// truncated_pmf() renormalizes over the bounded support where a proper
// population distribution is needed.
class TruePrior {
 public:
  enum class Kind { poisson, geometric, custom };

  static TruePrior poisson(double tau, int k_max = kDefaultMaxLevel) {
    if (!(tau > 0.0) || !std::isfinite(tau))
      throw std::invalid_argument("TruePrior: poisson tau must be positive");
    TruePrior f(Kind::poisson, k_max);
    f.tau_ = tau;
    return f;
  }

  static TruePrior geometric(double q, int k_max = kDefaultMaxLevel) {
    if (!(q > 0.0) || !(q < 1.0))
      throw std::invalid_argument("TruePrior: geometric q must lie in (0,1)");
    TruePrior f(Kind::geometric, k_max);
    f.q_ = q;
    return f;
  }

  // Already-truncated weight vector; entries must be strictly positive.
  static TruePrior custom(std::vector<double> weights) {
    if (weights.empty())
      throw std::invalid_argument("TruePrior: custom weights empty");
    double total = 0.0;
    for (double w : weights) {
      if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument(
            "TruePrior: custom weights must be strictly positive");
      total += w;
    }
    TruePrior f(Kind::custom, static_cast<int>(weights.size()) - 1);
    f.weights_ = std::move(weights);
    for (double& w : f.weights_) w /= total;
    return f;
  }

  Kind kind() const { return kind_; }
  int max_level() const { return k_max_; }
  double tau() const { return tau_; }
  double q() const { return q_; }

  double log_mass(int h) const {
    check_support(h);
    switch (kind_) {
      case Kind::poisson:
        return -tau_ + h * std::log(tau_) - std::lgamma(h + 1.0);
      case Kind::geometric:
        return h * std::log1p(-q_) + std::log(q_);
      case Kind::custom:
        return std::log(weights_[h]);
    }
    throw std::logic_error("TruePrior: bad kind");
  }

  double mass(int h) const { return std::exp(log_mass(h)); }

  // f renormalized to a proper pmf over 0..max_level.
  std::vector<double> truncated_pmf() const {
    std::vector<double> pmf(k_max_ + 1);
    double total = 0.0;
    for (int h = 0; h <= k_max_; ++h) {
      pmf[h] = mass(h);
      total += pmf[h];
    }
    for (double& v : pmf) v /= total;
    return pmf;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::poisson:
        return "poisson:" + fmt_double_exact(tau_);
      case Kind::geometric:
        return "geometric:" + fmt_double_exact(q_);
      case Kind::custom: {
        std::string s = "custom:";
        for (size_t i = 0; i < weights_.size(); ++i) {
          if (i) s += ',';
          s += fmt_double_exact(weights_[i]);
        }
        return s;
      }
    }
    return "?";
  }

  const std::vector<double>& custom_weights() const { return weights_; }

 private:
  TruePrior(Kind kind, int k_max) : kind_(kind), k_max_(k_max) {
    if (k_max_ < 0)
      throw std::invalid_argument("TruePrior: max level must be >= 0");
  }

  void check_support(int h) const {
    if (h < 0 || h > k_max_)
      throw std::invalid_argument("TruePrior: level " + std::to_string(h) +
                                  " outside 0.." + std::to_string(k_max_));
  }

  Kind kind_;
  int k_max_;
  double tau_ = 0.0;
  double q_ = 0.0;
  std::vector<double> weights_;
};

}  // namespace cognet
