#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "cognet/inequality.hpp"
#include "cognet/likelihood.hpp"
#include "cognet/sbm.hpp"

using namespace cognet;

TEST_CASE("sbm generation is deterministic per seed") {
  const SbmGraph a = generate_sbm(200, 3.0, 1.0, 0.1, 42);
  const SbmGraph b = generate_sbm(200, 3.0, 1.0, 0.1, 42);
  CHECK(a.levels == b.levels);
  CHECK(a.adjacency == b.adjacency);
  const SbmGraph c = generate_sbm(200, 3.0, 1.0, 0.1, 43);
  CHECK((a.levels != c.levels || a.adjacency != c.adjacency));
}

TEST_CASE("sbm at beta=0 is a plain random graph") {
  const int n = 800;
  const double delta = 0.08;
  const SbmGraph g = generate_sbm(n, 3.0, 0.0, delta, 7);
  double edges = 0.0;
  for (const auto& nbrs : g.adjacency) edges += nbrs.size();
  edges /= 2.0;
  const double pairs = n * (n - 1) / 2.0;
  const double sigma = std::sqrt(pairs * delta * (1.0 - delta));
  CHECK(std::abs(edges - pairs * delta) < 3.0 * sigma);
}

TEST_CASE("sbm at huge beta connects only same-level pairs") {
  const SbmGraph g = generate_sbm(500, 3.0, 50.0, 0.5, 11);
  for (int i = 0; i < g.n; ++i)
    for (int j : g.adjacency[i]) CHECK(g.levels[i] == g.levels[j]);
}

TEST_CASE("empirical neighbor belief censors higher types") {
  SbmGraph g;
  g.n = 5;
  g.levels = {3, 0, 0, 1, 5};
  g.adjacency = {{1, 2, 3, 4}, {0}, {0}, {0}, {0}};
  const auto b3 = empirical_neighbor_belief(g, 0);
  REQUIRE(b3.has_value());
  CHECK((*b3)[0] == Catch::Approx(2.0 / 3.0));
  CHECK((*b3)[1] == Catch::Approx(1.0 / 3.0));
  CHECK((*b3)[2] == 0.0);

  g.levels = {2, 0, 0, 1, 5};
  const auto b2 = empirical_neighbor_belief(g, 0);
  REQUIRE(b2.has_value());
  CHECK((*b2)[0] == Catch::Approx(2.0 / 3.0));
  CHECK((*b2)[1] == Catch::Approx(1.0 / 3.0));

  // all neighbors at 0, agent at 3
  g.levels = {3, 0, 0, 0, 0};
  const auto point = empirical_neighbor_belief(g, 0);
  REQUIRE(point.has_value());
  CHECK((*point)[0] == 1.0);

  // nothing observable below the agent
  g.levels = {2, 5, 5, 5, 5};
  CHECK_FALSE(empirical_neighbor_belief(g, 0).has_value());
  // level-0 agents never qualify
  g.levels = {0, 0, 0, 0, 0};
  CHECK_FALSE(empirical_neighbor_belief(g, 0).has_value());
}

TEST_CASE("pooled neighborhoods at beta=0 approximate the truncated conditional") {
  const TruePrior f = TruePrior::poisson(3.0);
  const SbmGraph g = generate_sbm(1500, 3.0, 0.0, 0.08, 5);
  std::vector<double> pooled(6, 0.0);
  double total = 0.0;
  for (int i = 0; i < g.n; ++i) {
    if (g.levels[i] != 6) continue;
    for (int j : g.adjacency[i]) {
      if (g.levels[j] < 6) {
        pooled[g.levels[j]] += 1.0;
        total += 1.0;
      }
    }
  }
  REQUIRE(total > 1000);
  const Belief truth = belief(f, 6, 1.0);
  for (int h = 0; h < 6; ++h)
    CHECK(std::abs(pooled[h] / total - truth.weights[h]) < 0.05);
}

TEST_CASE("effective-p estimation recovers a self-generated belief") {
  const TruePrior f = TruePrior::poisson(3.0);
  const Belief g = belief(f, 6, 0.5);
  const EffectivePFit fit = estimate_effective_p(g.weights, f, 6, default_p_search());
  CHECK(fit.p_hat == Catch::Approx(0.5));
  CHECK(fit.kl < 1e-12);
  CHECK(fit.agent_level == 6);

  // KL of identical distributions is zero for any shape
  const EffectivePFit self = estimate_effective_p(
      belief(f, 3, 0.7).weights, f, 3, default_p_search());
  CHECK(self.kl < 1e-12);

  // a level-1 model fits every p equally; ties break toward the larger p
  const EffectivePFit tie =
      estimate_effective_p({1.0}, f, 1, default_p_search());
  CHECK(tie.p_hat == 1.0);
  CHECK(tie.kl == 0.0);

  CHECK_THROWS_AS(estimate_effective_p({0.5, 0.6}, f, 2, default_p_search()),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_effective_p({0.5, 0.5, 0.0}, f, 2, default_p_search()),
                  std::invalid_argument);
}

TEST_CASE("topology experiment decays with homophily at desk scale") {
  TopologyConfig config;
  config.n = 700;
  config.tau = 3.0;
  config.beta_grid = {0.0, 0.5, 1.0, 2.0, 4.0};
  config.delta = 0.3;
  config.seed = 3;
  config.min_neighbors = 1;
  const TopologyReport report = topology_mapping_experiment(config);
  REQUIRE(report.rows.size() == 5);
  CHECK(report.rows[0].mean_p_hat >= 0.8);
  CHECK(report.rows[0].mean_p_hat <= 1.0);
  for (size_t i = 1; i < report.rows.size(); ++i)
    CHECK(report.rows[i].mean_p_hat < report.rows[i - 1].mean_p_hat);
  for (const auto& row : report.rows) {
    CHECK(row.n_eligible > 0);
    CHECK(row.mean_kl < 0.2);
  }
  // same-level density stays near delta; distant classes are suppressed
  const int classes = config.k_max + 1;
  const auto& dens = report.class_pair_density[4];  // beta = 4
  CHECK(std::abs(dens[3 * classes + 3] - config.delta) < 0.05);
  CHECK(dens[3 * classes + 1] < 0.05);

  // adjacent classes at beta = 1 link at about delta * exp(-1)
  const auto& dens1 = report.class_pair_density[2];
  CHECK(std::abs(dens1[2 * classes + 3] / dens1[3 * classes + 3] -
                 std::exp(-1.0)) < 0.1);
}

TEST_CASE("population sampling contracts") {
  const TruePrior single = TruePrior::custom({1.0});
  const auto all_zero =
      sample_population_actions(single, BeautyContest{}, 0.5, 50, 0.0, 9);
  for (const auto& [lvl, act] : all_zero) {
    CHECK(lvl == 0);
    CHECK(act == 50.0);
  }

  const TruePrior f = TruePrior::poisson(1.5);
  const ActionProfile prof = action_profile(f, BeautyContest{}, 0.6);
  std::set<double> allowed(prof.actions.begin(), prof.actions.end());
  for (const auto& [lvl, act] :
       sample_population_actions(f, BeautyContest{}, 0.6, 200, 0.0, 9)) {
    CHECK(allowed.count(act) == 1);
    CHECK(act == prof.actions[lvl]);
  }
}

TEST_CASE("sampled level histogram matches the truncated prior") {
  const TruePrior f = TruePrior::poisson(2.0);
  const int n = 100000;
  std::vector<int> counts(f.max_level() + 1, 0);
  for (const auto& [lvl, act] :
       sample_population_actions(f, BeautyContest{}, 1.0, n, 0.0, 13))
    ++counts[lvl];
  const std::vector<double> pmf = f.truncated_pmf();
  for (int h = 0; h <= f.max_level(); ++h) {
    const double sigma = std::sqrt(n * pmf[h] * (1.0 - pmf[h]));
    CHECK(std::abs(counts[h] - n * pmf[h]) <= 3.0 * sigma + 1.0);
  }
}

TEST_CASE("loglik surface basics") {
  const TruePrior gen = TruePrior::poisson(1.5);
  std::vector<double> data;
  for (const auto& [lvl, act] :
       sample_population_actions(gen, BeautyContest{}, 0.4, 300, 2.0, 21))
    data.push_back(act);
  const std::vector<double> taus = {1.0, 1.5, 2.0, 2.5};
  const std::vector<double> ps = {0.3, 0.4, 0.5};

  const LikelihoodSurface surf = loglik_surface(data, taus, ps, 2.0);
  std::vector<double> doubled = data;
  doubled.insert(doubled.end(), data.begin(), data.end());
  const LikelihoodSurface surf2 = loglik_surface(doubled, taus, ps, 2.0);
  for (size_t ti = 0; ti < taus.size(); ++ti)
    for (size_t pi = 0; pi < ps.size(); ++pi)
      CHECK(surf2.loglik[ti][pi] == Catch::Approx(2.0 * surf.loglik[ti][pi]));

  // a single observation at the anchor is best explained by the smallest tau
  const LikelihoodSurface one =
      loglik_surface({50.0}, default_tau_grid(0.25), {1.0}, 2.0);
  CHECK(one.argmax_tau == Catch::Approx(0.5));
}

TEST_CASE("ridge of near-maximal cells tracks tau/p") {
  const TruePrior gen = TruePrior::poisson(1.5);
  std::vector<double> data;
  for (const auto& [lvl, act] :
       sample_population_actions(gen, BeautyContest{}, 0.4, 1000, 2.0, 33))
    data.push_back(act);
  const LikelihoodSurface surf = loglik_surface(
      data, default_tau_grid(0.05), default_identify_p_grid(0.02), 2.0);
  double best = -1e300;
  for (const auto& row : surf.loglik)
    for (double v : row) best = std::max(best, v);
  const double target = 1.5 / 0.4;
  int cells = 0, in_band = 0;
  for (size_t ti = 0; ti < surf.tau_grid.size(); ++ti) {
    for (size_t pi = 0; pi < surf.p_grid.size(); ++pi) {
      if (surf.loglik[ti][pi] >= best - 2.0) {
        ++cells;
        const double ratio = surf.tau_grid[ti] / surf.p_grid[pi];
        if (std::abs(ratio - target) <= 0.15 * target) ++in_band;
      }
    }
  }
  CHECK(cells >= 5);
  CHECK(in_band >= 5);
  // the whole near-max set stays inside a band of +-15% around the truth
  CHECK(in_band == cells);
}

TEST_CASE("info-shock estimate") {
  // sigma = 0.5: the fit must track action positions, which identify tau/p
  const double sigma = 0.5;
  const TruePrior gen = TruePrior::poisson(1.5);
  const auto draw = [&](double p, std::uint64_t seed) {
    std::vector<double> data;
    for (const auto& [lvl, act] :
         sample_population_actions(gen, BeautyContest{}, p, 3000, sigma, seed))
      data.push_back(act);
    return data;
  };
  const auto taus = default_tau_grid(0.05);

  // both blocks transparent: ratio near 1
  const InfoShockEstimate same =
      info_shock_estimate(draw(1.0, 1), draw(1.0, 2), taus, sigma);
  CHECK(same.p_endo > 0.9);

  // swapping the blocks inverts the raw ratio exactly
  const auto a = draw(1.0, 3), b = draw(0.5, 4);
  const InfoShockEstimate ab = info_shock_estimate(a, b, taus, sigma);
  const InfoShockEstimate ba = info_shock_estimate(b, a, taus, sigma);
  CHECK(ab.ratio_raw * ba.ratio_raw == Catch::Approx(1.0).epsilon(1e-12));

  // recovery of a mid-range transparency
  CHECK(ab.p_endo > 0.4);
  CHECK(ab.p_endo < 0.6);
}

TEST_CASE("gini formula") {
  CHECK(gini({5.0, 5.0, 5.0}) == Catch::Approx(0.0).margin(1e-15));
  CHECK(gini({0.0, 1.0}) == Catch::Approx(0.5));
  const std::vector<double> w = {0.5, 0.5};
  CHECK(gini({1.0, 3.0}, &w) == Catch::Approx(0.25));
  CHECK(gini({0.0, 0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(gini({1.0, -2.0}), std::invalid_argument);
  CHECK_THROWS_AS(gini({}), std::invalid_argument);

  // scale invariance
  const std::vector<double> vals = {0.3, 1.9, 4.4, 0.01, 2.2};
  CHECK(std::abs(gini(vals) - gini({0.3 * 7, 1.9 * 7, 4.4 * 7, 0.01 * 7, 2.2 * 7})) <
        1e-12);
}

TEST_CASE("cost of clarity at reduced scale") {
  ClarityConfig config;
  config.n = 400;
  config.mc_runs = 40;
  config.p_grid = linspace(0.01, 1.0, 8);
  config.seed = 99;
  const InequalityCurve curve = cost_of_clarity_experiment(config);
  REQUIRE(curve.gini.size() == 8);
  for (double g : curve.gini) {
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
  }
  CHECK(curve.gini.front() > curve.gini.back());

  const InequalityCurve again = cost_of_clarity_experiment(config);
  CHECK(curve.gini == again.gini);
  CHECK(curve.relative_advantage == again.relative_advantage);
}

TEST_CASE("loss gini matches a direct double-sum oracle") {
  // brute-force evaluation of sum_k sum_j f(k)f(j)|L_k - L_j| / (2 sum_k f L)
  const TruePrior f = TruePrior::poisson(1.5);
  const double gamma = 2.0 / 3.0;
  for (double p : {0.1, 0.5, 0.9}) {
    const ActionProfile prof =
        action_profile(f, BeautyContest{50.0, gamma}, p);
    const std::vector<double> fhat = f.truncated_pmf();
    double sbar = 0.0;
    for (size_t k = 0; k < prof.actions.size(); ++k)
      sbar += fhat[k] * prof.actions[k];
    std::vector<double> losses(prof.actions.size());
    for (size_t k = 0; k < losses.size(); ++k) {
      const double d = prof.actions[k] - gamma * sbar;
      losses[k] = d * d;
    }
    double num = 0.0, denom = 0.0;
    for (size_t k = 0; k < losses.size(); ++k) {
      denom += fhat[k] * losses[k];
      for (size_t j = 0; j < losses.size(); ++j)
        num += fhat[k] * fhat[j] * std::abs(losses[k] - losses[j]);
    }
    const double direct = num / (2.0 * denom);
    CHECK(loss_gini(f, gamma, p) == Catch::Approx(direct).epsilon(1e-12));
  }
}
