// Command-line front end: belief/actions/welfare/otd queries, the property
// check table, and the four seeded experiments. Every command writes a JSON
// manifest (echoing the effective config) plus its data artifact into
// --output-dir, named <command>_<seed>.{json,csv}.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cognet/cognet.hpp"

namespace fs = std::filesystem;
using cognet::json;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  int threads = 0;
};

json g_config;  // parsed --config document, one block per command

json config_block(const std::string& command) {
  if (g_config.is_null() || !g_config.contains(command)) return json::object();
  return g_config.at(command);
}

void reject_unknown_keys(const json& block, const std::string& command,
                         const std::vector<std::string>& known) {
  for (const auto& [key, value] : block.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("config." + command + ": unknown key '" +
                                  key + "'");
  }
}

// precedence: flag > config-file > built-in default
template <typename T>
void merge(const CLI::Option* opt, const json& block, const char* key, T& out) {
  if (opt->count() > 0) return;
  if (block.contains(key)) out = block.at(key).get<T>();
}

cognet::TruePrior parse_prior(const std::string& text, int k_max) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "poisson")
    return cognet::TruePrior::poisson(std::stod(args), k_max);
  if (kind == "geometric")
    return cognet::TruePrior::geometric(std::stod(args), k_max);
  if (kind == "custom") {
    std::vector<double> weights;
    size_t pos = 0;
    while (pos <= args.size()) {
      const size_t comma = args.find(',', pos);
      weights.push_back(std::stod(
          args.substr(pos, comma == std::string::npos ? comma : comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return cognet::TruePrior::custom(weights);
  }
  throw std::invalid_argument(
      "unknown prior '" + text +
      "' (expected poisson:TAU, geometric:Q, custom:W0,W1,...)");
}

cognet::GameRule parse_rule(const std::string& text) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t colon = text.find(':', pos);
    parts.push_back(
        text.substr(pos, colon == std::string::npos ? colon : colon - pos));
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts[0] == "beauty") {
    cognet::BeautyContest bc;
    if (parts.size() > 1) bc.anchor = std::stod(parts[1]);
    if (parts.size() > 2) bc.multiplier = std::stod(parts[2]);
    return bc;
  }
  if (parts[0] == "linear") {
    cognet::LinearComplements lc;
    if (parts.size() > 1) lc.alpha = std::stod(parts[1]);
    return lc;
  }
  throw std::invalid_argument(
      "unknown game '" + text +
      "' (expected beauty[:ANCHOR[:M]] or linear[:ALPHA])");
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void emit(const CommonOpts& common, const std::string& command,
          const json& params, const json& result,
          const std::optional<std::string>& csv) {
  fs::create_directories(common.output_dir);
  json manifest{{"command", command},
                {"seed", common.seed},
                {"code_version", cognet::kVersion},
                {"config", params},
                {"result", result}};
  const std::string stem = command + "_" + std::to_string(common.seed);
  write_file(fs::path(common.output_dir) / (stem + ".json"),
             manifest.dump(2) + "\n");
  if (csv) write_file(fs::path(common.output_dir) / (stem + ".csv"), *csv);
}

struct CheckRow {
  std::string name;
  bool pass;
};

std::vector<CheckRow> run_property_checks() {
  using namespace cognet;
  std::vector<CheckRow> rows;
  std::vector<TruePrior> priors;
  for (double tau : {0.5, 1.5, 3.0, 5.0})
    priors.push_back(TruePrior::poisson(tau));
  for (double q : {0.3, 0.5, 0.7}) priors.push_back(TruePrior::geometric(q));
  std::vector<double> ps;
  for (double p = 0.05; p <= 1.0 + 1e-12; p += 0.05)
    ps.push_back(std::min(p, 1.0));

  bool normalization = true, kernel_ratio = true, log_concavity = true;
  bool mlrp = true, fosd = true, hierarchy = true;
  bool score_id = true, sens_id = true, elas_id = true, mean_monotone = true;
  const double fd_step = 1e-6;

  for (const auto& f : priors) {
    for (int k = 1; k <= f.max_level() + 1; ++k) {
      double prev_mean = -1.0;
      for (double p : ps) {
        const Belief b = belief(f, k, p);
        double total = 0.0;
        for (double w : b.weights) total += w;
        normalization &= std::abs(total - 1.0) < 1e-12;
        for (int h = 0; h + 1 < k; ++h) {
          const double got = b.weights[h + 1] / b.weights[h];
          const double want = f.mass(h + 1) / (p * f.mass(h));
          kernel_ratio &= std::abs(got - want) <= 1e-12 * want;
        }
        if (k >= 2) log_concavity &= check_log_concavity(b.weights).holds;
        if (k >= 2) hierarchy &= check_hierarchy_expansion(f, k, p).holds;
        const double mean = moments(b).mean;
        if (prev_mean >= 0.0)
          mean_monotone &= (k == 1) ? mean == prev_mean : mean < prev_mean;
        prev_mean = mean;

        if (k >= 2 && p > fd_step && p + fd_step <= 1.0) {
          const Belief lo = belief(f, k, p - fd_step);
          const Belief hi = belief(f, k, p + fd_step);
          const int h = k / 2;
          const double fd_score =
              (std::log(hi.weights[h]) - std::log(lo.weights[h])) /
              (2 * fd_step);
          score_id &= std::abs(score(b, h) - fd_score) < 1e-6;
          const double fd_mean =
              (moments(hi).mean - moments(lo).mean) / (2 * fd_step);
          sens_id &= std::abs(sensitivity(b) - fd_mean) < 1e-6;
          const double fd_elas = (std::log(k - moments(hi).mean) -
                                  std::log(k - moments(lo).mean)) /
                                 (std::log(p + fd_step) - std::log(p - fd_step));
          elas_id &= std::abs(elasticity(b) - fd_elas) < 1e-6;
        }
      }
    }
    for (int k : {2, 5, 11, 21}) {
      for (size_t i = 0; i < ps.size(); ++i) {
        for (size_t j = i + 1; j < ps.size(); ++j) {
          mlrp &= check_mlrp_in_p(f, k, ps[j], ps[i]).holds;
          fosd &= check_fosd(belief(f, k, ps[i]).weights,
                             belief(f, k, ps[j]).weights)
                      .holds;
        }
      }
    }
  }

  bool tv_monotone = true;
  const TruePrior pois2 = TruePrior::poisson(2.0, 70);
  for (double p : {0.4, 0.7, 1.0}) {
    double prev = 1.0;
    for (int k : {5, 10, 20, 40, 60}) {
      const double tv = tv_distance_to_poisson_limit(pois2, k, p);
      tv_monotone &= tv <= prev;
      prev = tv;
    }
  }

  rows.push_back({"belief normalization", normalization});
  rows.push_back({"kernel ratio identity", kernel_ratio});
  rows.push_back({"score finite-difference identity", score_id});
  rows.push_back({"sensitivity finite-difference identity", sens_id});
  rows.push_back({"elasticity finite-difference identity", elas_id});
  rows.push_back({"mean monotone in p", mean_monotone});
  rows.push_back({"log-concavity preserved", log_concavity});
  rows.push_back({"mlrp in p", mlrp});
  rows.push_back({"mlrp implies fosd", fosd});
  rows.push_back({"hierarchy expansion", hierarchy});
  rows.push_back({"tv distance nonincreasing", tv_monotone});
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cognitive-hierarchy simulations under network-biased beliefs"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--config", common.config_path,
                 "JSON config file; command-line flags take precedence");
  app.add_option("--output-dir", common.output_dir, "artifact directory");
  app.add_option("--seed", common.seed, "experiment seed");
  app.add_option("--threads", common.threads,
                 "worker cap for experiments (0 = hardware)");

  auto* cmd_belief =
      app.add_subcommand("belief", "belief weights of one level");
  std::string belief_prior = "poisson:1.5";
  int belief_level = 2;
  double belief_p = 1.0;
  int belief_kmax = cognet::kDefaultMaxLevel;
  auto* ob_prior = cmd_belief->add_option("--prior", belief_prior);
  auto* ob_level = cmd_belief->add_option("--level", belief_level);
  auto* ob_p = cmd_belief->add_option("--p", belief_p);
  auto* ob_kmax = cmd_belief->add_option("--kmax", belief_kmax);

  auto* cmd_actions =
      app.add_subcommand("actions", "equilibrium action profile");
  std::string act_prior = "poisson:1.5";
  std::string act_game = "beauty:50:0.6666666666666666";
  double act_p = 1.0;
  int act_kmax = cognet::kDefaultMaxLevel;
  auto* oa_prior = cmd_actions->add_option("--prior", act_prior);
  auto* oa_game = cmd_actions->add_option("--game", act_game);
  auto* oa_p = cmd_actions->add_option("--p", act_p);
  auto* oa_kmax = cmd_actions->add_option("--kmax", act_kmax);

  auto* cmd_welfare = app.add_subcommand("welfare", "planner welfare curve");
  std::string wf_prior = "poisson:1.5";
  std::string wf_game = "beauty:50:0.6666666666666666";
  std::string wf_objective = "stability";
  double wf_gamma = 2.0 / 3.0, wf_lambda = 0.25, wf_m = 2.0 / 3.0, wf_c = 1.0;
  double wf_pmin = 0.05;
  int wf_points = 50, wf_kmax = cognet::kDefaultMaxLevel;
  auto* ow_prior = cmd_welfare->add_option("--prior", wf_prior);
  auto* ow_game = cmd_welfare->add_option("--game", wf_game);
  auto* ow_obj = cmd_welfare->add_option(
      "--objective", wf_objective,
      "quadratic|competition|stability|innovation|mean_sophistication");
  auto* ow_gamma = cmd_welfare->add_option("--gamma", wf_gamma);
  auto* ow_lambda = cmd_welfare->add_option("--lambda", wf_lambda);
  auto* ow_m = cmd_welfare->add_option("--m", wf_m);
  auto* ow_c = cmd_welfare->add_option("--c", wf_c);
  auto* ow_pmin = cmd_welfare->add_option("--p-min", wf_pmin);
  auto* ow_points = cmd_welfare->add_option("--points", wf_points);
  auto* ow_kmax = cmd_welfare->add_option("--kmax", wf_kmax);

  auto* cmd_otd = app.add_subcommand("otd", "projected gradient ascent on p");
  double otd_tau = 1.5, otd_gamma = 2.0 / 3.0;
  cognet::OtdConfig otd_config;
  auto* oo_tau = cmd_otd->add_option("--tau", otd_tau);
  auto* oo_gamma = cmd_otd->add_option("--gamma", otd_gamma);
  auto* oo_eps = cmd_otd->add_option("--epsilon", otd_config.epsilon);
  auto* oo_iter = cmd_otd->add_option("--max-iter", otd_config.max_iter);
  auto* oo_lr =
      cmd_otd->add_option("--learning-rate", otd_config.learning_rate);
  auto* oo_fd = cmd_otd->add_option("--fd-step", otd_config.fd_step);
  auto* oo_pinit = cmd_otd->add_option("--p-init", otd_config.p_init);
  auto* oo_kbar = cmd_otd->add_option("--kbar", otd_config.k_bar);

  auto* cmd_check = app.add_subcommand("check", "run the property suite");

  auto* cmd_topo =
      app.add_subcommand("topology", "effective-p mapping on block graphs");
  cognet::TopologyConfig topo;
  auto* ot_n = cmd_topo->add_option("--n", topo.n);
  auto* ot_tau = cmd_topo->add_option("--tau", topo.tau);
  auto* ot_betas = cmd_topo->add_option("--betas", topo.beta_grid);
  auto* ot_delta = cmd_topo->add_option("--delta", topo.delta);
  auto* ot_minn = cmd_topo->add_option("--min-neighbors", topo.min_neighbors);
  auto* ot_kmax = cmd_topo->add_option("--kmax", topo.k_max);

  auto* cmd_ident =
      app.add_subcommand("identify", "likelihood surface over (tau, p)");
  double id_tau = 1.5, id_p = 0.4, id_sigma = 2.0;
  int id_n = 1000, id_kmax = cognet::kDefaultMaxLevel;
  double id_tau_step = 0.05, id_p_step = 0.02;
  auto* oi_tau = cmd_ident->add_option("--tau", id_tau, "generator tau");
  auto* oi_p = cmd_ident->add_option("--p", id_p, "generator p");
  auto* oi_sigma = cmd_ident->add_option("--sigma", id_sigma);
  auto* oi_n = cmd_ident->add_option("--n", id_n);
  auto* oi_tau_step = cmd_ident->add_option("--tau-step", id_tau_step);
  auto* oi_p_step = cmd_ident->add_option("--p-step", id_p_step);
  auto* oi_kmax = cmd_ident->add_option("--kmax", id_kmax);

  auto* cmd_shock =
      app.add_subcommand("infoshock", "two-block transparency estimate");
  // small default noise: action positions identify tau/p, level weights do not
  double sh_tau = 1.5, sh_p = 0.4, sh_sigma = 0.5, sh_tau_step = 0.05;
  int sh_n = 5000, sh_kmax = cognet::kDefaultMaxLevel;
  auto* os_tau = cmd_shock->add_option("--tau", sh_tau);
  auto* os_p = cmd_shock->add_option("--p", sh_p, "transparency of block B");
  auto* os_sigma = cmd_shock->add_option("--sigma", sh_sigma);
  auto* os_n = cmd_shock->add_option("--n", sh_n, "agents per block");
  auto* os_tau_step = cmd_shock->add_option("--tau-step", sh_tau_step);
  auto* os_kmax = cmd_shock->add_option("--kmax", sh_kmax);

  auto* cmd_clarity = app.add_subcommand("clarity", "payoff inequality sweep");
  cognet::ClarityConfig clarity;
  int clarity_points = 50;
  auto* oc_n = cmd_clarity->add_option("--n", clarity.n);
  auto* oc_tau = cmd_clarity->add_option("--tau", clarity.tau);
  auto* oc_lambda = cmd_clarity->add_option("--lambda", clarity.lambda);
  auto* oc_m = cmd_clarity->add_option("--m", clarity.m);
  auto* oc_runs = cmd_clarity->add_option("--runs", clarity.mc_runs);
  auto* oc_points = cmd_clarity->add_option("--points", clarity_points);
  auto* oc_kmax = cmd_clarity->add_option("--kmax", clarity.k_max);
  cmd_clarity->add_flag("--defaults", "run with the published defaults");

  try {
    app.parse(argc, argv);

    if (!common.config_path.empty()) {
      std::ifstream in(common.config_path);
      if (!in)
        throw std::invalid_argument("cannot read config " + common.config_path);
      in >> g_config;
      if (g_config.contains("seed") && app.count("--seed") == 0)
        common.seed = g_config.at("seed").get<std::uint64_t>();
      if (g_config.contains("output_dir") && app.count("--output-dir") == 0)
        common.output_dir = g_config.at("output_dir").get<std::string>();
      if (g_config.contains("threads") && app.count("--threads") == 0)
        common.threads = g_config.at("threads").get<int>();
    }

    if (cmd_belief->parsed()) {
      const json block = config_block("belief");
      reject_unknown_keys(block, "belief", {"prior", "level", "p", "kmax"});
      merge(ob_prior, block, "prior", belief_prior);
      merge(ob_level, block, "level", belief_level);
      merge(ob_p, block, "p", belief_p);
      merge(ob_kmax, block, "kmax", belief_kmax);
      const cognet::TruePrior prior = parse_prior(belief_prior, belief_kmax);
      const cognet::Belief b = cognet::belief(prior, belief_level, belief_p);
      const json result = b;
      emit(common, "belief",
           json{{"prior", belief_prior},
                {"level", belief_level},
                {"p", belief_p},
                {"kmax", belief_kmax}},
           result, std::nullopt);
      std::cout << result.dump(2) << "\n";
      return 0;
    }

    if (cmd_actions->parsed()) {
      const json block = config_block("actions");
      reject_unknown_keys(block, "actions", {"prior", "game", "p", "kmax"});
      merge(oa_prior, block, "prior", act_prior);
      merge(oa_game, block, "game", act_game);
      merge(oa_p, block, "p", act_p);
      merge(oa_kmax, block, "kmax", act_kmax);
      const cognet::TruePrior prior = parse_prior(act_prior, act_kmax);
      const cognet::GameRule rule = parse_rule(act_game);
      const cognet::ActionProfile prof =
          cognet::action_profile(prior, rule, act_p);
      const std::string csv = cognet::to_csv(prof);
      emit(common, "actions",
           json{{"prior", act_prior},
                {"game", act_game},
                {"p", act_p},
                {"kmax", act_kmax}},
           json(prof), csv);
      std::cout << csv;
      return 0;
    }

    if (cmd_welfare->parsed()) {
      const json block = config_block("welfare");
      reject_unknown_keys(block, "welfare",
                          {"prior", "game", "objective", "gamma", "lambda", "m",
                           "c", "p_min", "points", "kmax"});
      merge(ow_prior, block, "prior", wf_prior);
      merge(ow_game, block, "game", wf_game);
      merge(ow_obj, block, "objective", wf_objective);
      merge(ow_gamma, block, "gamma", wf_gamma);
      merge(ow_lambda, block, "lambda", wf_lambda);
      merge(ow_m, block, "m", wf_m);
      merge(ow_c, block, "c", wf_c);
      merge(ow_pmin, block, "p_min", wf_pmin);
      merge(ow_points, block, "points", wf_points);
      merge(ow_kmax, block, "kmax", wf_kmax);

      cognet::WelfareObjective obj = cognet::Stability{wf_m};
      if (wf_objective == "quadratic")
        obj = cognet::QuadraticCoordination{wf_gamma};
      else if (wf_objective == "competition")
        obj = cognet::Competition{wf_lambda};
      else if (wf_objective == "stability")
        obj = cognet::Stability{wf_m};
      else if (wf_objective == "innovation")
        obj = cognet::Innovation{};
      else if (wf_objective == "mean_sophistication")
        obj = cognet::MeanSophisticationMinusOpacityCost{wf_c};
      else
        throw std::invalid_argument("unknown objective " + wf_objective);

      const cognet::TruePrior prior = parse_prior(wf_prior, wf_kmax);
      const cognet::WelfareCurve curve =
          cognet::welfare_curve(prior, parse_rule(wf_game), obj,
                                cognet::linspace(wf_pmin, 1.0, wf_points));
      json params{{"prior", wf_prior},
                  {"game", wf_game},
                  {"objective", wf_objective},
                  {"gamma", wf_gamma},
                  {"lambda", wf_lambda},
                  {"m", wf_m},
                  {"c", wf_c},
                  {"p_min", wf_pmin},
                  {"points", wf_points},
                  {"kmax", wf_kmax}};
      if (wf_objective == "innovation") {
        const cognet::Innovation in{};  // repo calibration
        params["innovation"] = json{{"A", in.A},         {"alpha", in.alpha},
                                    {"beta", in.beta},   {"eps", in.eps},
                                    {"c_info", in.c_info}, {"rho", in.rho}};
      }
      emit(common, "welfare", params, json(curve), cognet::to_csv(curve));
      std::cout << "argmax_p " << cognet::fmt_double(curve.argmax_p) << "\n";
      return 0;
    }

    if (cmd_otd->parsed()) {
      const json block = config_block("otd");
      reject_unknown_keys(block, "otd",
                          {"tau", "gamma", "epsilon", "max_iter",
                           "learning_rate", "fd_step", "p_init", "kbar"});
      merge(oo_tau, block, "tau", otd_tau);
      merge(oo_gamma, block, "gamma", otd_gamma);
      merge(oo_eps, block, "epsilon", otd_config.epsilon);
      merge(oo_iter, block, "max_iter", otd_config.max_iter);
      merge(oo_lr, block, "learning_rate", otd_config.learning_rate);
      merge(oo_fd, block, "fd_step", otd_config.fd_step);
      merge(oo_pinit, block, "p_init", otd_config.p_init);
      merge(oo_kbar, block, "kbar", otd_config.k_bar);
      const cognet::OtdResult res =
          cognet::otd_optimize(otd_tau, otd_gamma, otd_config);
      emit(common, "otd",
           json{{"tau", otd_tau},
                {"gamma", otd_gamma},
                {"epsilon", otd_config.epsilon},
                {"max_iter", otd_config.max_iter},
                {"learning_rate", otd_config.learning_rate},
                {"fd_step", otd_config.fd_step},
                {"p_init", otd_config.p_init},
                {"kbar", otd_config.k_bar}},
           json(res), std::nullopt);
      std::cout << "p_star " << cognet::fmt_double(res.p_star) << " welfare "
                << cognet::fmt_double(res.welfare)
                << (res.converged ? " converged" : " not-converged") << "\n";
      return 0;
    }

    if (cmd_check->parsed()) {
      const auto rows = run_property_checks();
      bool all = true;
      json result = json::array();
      for (const auto& row : rows) {
        std::printf("%-42s %s\n", row.name.c_str(), row.pass ? "PASS" : "FAIL");
        result.push_back(json{{"name", row.name}, {"pass", row.pass}});
        all &= row.pass;
      }
      emit(common, "check", json::object(), result, std::nullopt);
      if (!all) throw std::runtime_error("property suite failed");
      return 0;
    }

    if (cmd_topo->parsed()) {
      const json block = config_block("topology");
      reject_unknown_keys(
          block, "topology",
          {"n", "tau", "betas", "delta", "min_neighbors", "kmax"});
      merge(ot_n, block, "n", topo.n);
      merge(ot_tau, block, "tau", topo.tau);
      merge(ot_betas, block, "betas", topo.beta_grid);
      merge(ot_delta, block, "delta", topo.delta);
      merge(ot_minn, block, "min_neighbors", topo.min_neighbors);
      merge(ot_kmax, block, "kmax", topo.k_max);
      topo.seed = common.seed;
      topo.threads = common.threads;
      const cognet::TopologyReport report =
          cognet::topology_mapping_experiment(topo);
      emit(common, "topology", json(report.config), json(report),
           cognet::to_csv(report));
      std::cout << cognet::to_csv(report);
      return 0;
    }

    if (cmd_ident->parsed()) {
      const json block = config_block("identify");
      reject_unknown_keys(
          block, "identify",
          {"tau", "p", "sigma", "n", "tau_step", "p_step", "kmax"});
      merge(oi_tau, block, "tau", id_tau);
      merge(oi_p, block, "p", id_p);
      merge(oi_sigma, block, "sigma", id_sigma);
      merge(oi_n, block, "n", id_n);
      merge(oi_tau_step, block, "tau_step", id_tau_step);
      merge(oi_p_step, block, "p_step", id_p_step);
      merge(oi_kmax, block, "kmax", id_kmax);
      const cognet::TruePrior gen = cognet::TruePrior::poisson(id_tau, id_kmax);
      std::vector<double> data;
      for (const auto& [lvl, act] : cognet::sample_population_actions(
               gen, cognet::BeautyContest{}, id_p, id_n, id_sigma, common.seed))
        data.push_back(act);
      const cognet::LikelihoodSurface surf = cognet::loglik_surface(
          data, cognet::default_tau_grid(id_tau_step),
          cognet::default_identify_p_grid(id_p_step), id_sigma,
          cognet::BeautyContest{}, id_kmax, common.threads);
      emit(common, "identify",
           json{{"tau", id_tau},
                {"p", id_p},
                {"sigma", id_sigma},
                {"n", id_n},
                {"tau_step", id_tau_step},
                {"p_step", id_p_step},
                {"kmax", id_kmax}},
           json(surf), cognet::to_csv(surf));
      std::cout << "argmax tau " << cognet::fmt_double(surf.argmax_tau)
                << " p " << cognet::fmt_double(surf.argmax_p) << "\n";
      return 0;
    }

    if (cmd_shock->parsed()) {
      const json block = config_block("infoshock");
      reject_unknown_keys(block, "infoshock",
                          {"tau", "p", "sigma", "n", "tau_step", "kmax"});
      merge(os_tau, block, "tau", sh_tau);
      merge(os_p, block, "p", sh_p);
      merge(os_sigma, block, "sigma", sh_sigma);
      merge(os_n, block, "n", sh_n);
      merge(os_tau_step, block, "tau_step", sh_tau_step);
      merge(os_kmax, block, "kmax", sh_kmax);
      const cognet::TruePrior gen = cognet::TruePrior::poisson(sh_tau, sh_kmax);
      std::vector<double> block_a, block_b;
      for (const auto& [lvl, act] : cognet::sample_population_actions(
               gen, cognet::BeautyContest{}, 1.0, sh_n, sh_sigma,
               cognet::splitmix64(common.seed ^ 0xA)))
        block_a.push_back(act);
      for (const auto& [lvl, act] : cognet::sample_population_actions(
               gen, cognet::BeautyContest{}, sh_p, sh_n, sh_sigma,
               cognet::splitmix64(common.seed ^ 0xB)))
        block_b.push_back(act);
      const cognet::InfoShockEstimate est = cognet::info_shock_estimate(
          block_a, block_b, cognet::default_tau_grid(sh_tau_step), sh_sigma,
          cognet::BeautyContest{}, sh_kmax);
      emit(common, "infoshock",
           json{{"tau", sh_tau},
                {"p", sh_p},
                {"sigma", sh_sigma},
                {"n", sh_n},
                {"tau_step", sh_tau_step},
                {"kmax", sh_kmax}},
           json(est), std::nullopt);
      std::cout << "tau_a " << cognet::fmt_double(est.tau_a) << " tau_b "
                << cognet::fmt_double(est.tau_b) << " p_endo "
                << cognet::fmt_double(est.p_endo) << "\n";
      return 0;
    }

    if (cmd_clarity->parsed()) {
      const json block = config_block("clarity");
      reject_unknown_keys(
          block, "clarity",
          {"n", "tau", "lambda", "m", "runs", "points", "kmax"});
      merge(oc_n, block, "n", clarity.n);
      merge(oc_tau, block, "tau", clarity.tau);
      merge(oc_lambda, block, "lambda", clarity.lambda);
      merge(oc_m, block, "m", clarity.m);
      merge(oc_runs, block, "runs", clarity.mc_runs);
      merge(oc_points, block, "points", clarity_points);
      merge(oc_kmax, block, "kmax", clarity.k_max);
      clarity.p_grid = cognet::linspace(0.01, 1.0, clarity_points);
      clarity.seed = common.seed;
      clarity.threads = common.threads;
      const cognet::InequalityCurve curve =
          cognet::cost_of_clarity_experiment(clarity);
      emit(common, "clarity", json(clarity), json(curve),
           cognet::to_csv(curve));
      std::cout << "gini[p=" << cognet::fmt_double(curve.p_grid.front())
                << "] = " << cognet::fmt_double(curve.gini.front())
                << "  gini[p=" << cognet::fmt_double(curve.p_grid.back())
                << "] = " << cognet::fmt_double(curve.gini.back()) << "\n";
      return 0;
    }

    throw std::invalid_argument("no command given");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help and friends
    json err{{"error", {{"type", "validation"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    json err{{"error", {{"type", "validation"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err{{"error", {{"type", "runtime"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
