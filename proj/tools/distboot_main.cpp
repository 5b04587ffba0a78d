// Command-line front end for the distributed bootstrap experiments:
// coverage / width / runtime studies, oracle width, and the tau_min
// calculator.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "distboot/harness.hpp"
#include "distboot/theory.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "csv";
  std::optional<int> threads;
  std::optional<std::string> norm;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path,
                  "JSON experiment config; defaults apply when omitted")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opts.seed, "Root seed override");
  cmd->add_option("--out", opts.out_path,
                  "Write the report here instead of stdout");
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", opts.threads,
                  "Worker threads (0 = hardware concurrency)");
  cmd->add_option("--norm", opts.norm, "Functional: sup, coord:<l>, or l2");
}

distboot::ExperimentConfig load_config(const CommonOpts& opts) {
  distboot::ExperimentConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = distboot::config_from_json_file(opts.config_path);
  }
  if (opts.seed) cfg.root_seed = *opts.seed;
  if (opts.threads) cfg.threads = *opts.threads;
  if (opts.norm) cfg.norm = distboot::parse_norm(*opts.norm);
  return cfg;
}

void deliver(const distboot::ExperimentReport& report,
             const CommonOpts& opts) {
  if (!opts.out_path.empty()) {
    distboot::emit_report(report, opts.format, opts.out_path);
    std::cerr << "wrote " << report.rows.size() << " rows to "
              << opts.out_path << "\n";
    return;
  }
  if (opts.format == "json") {
    std::cout << distboot::report_to_json(report);
  } else {
    std::cout << distboot::report_to_csv(report);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed multiplier bootstrap experiments"};
  app.require_subcommand(1);

  CommonOpts coverage_opts;
  CLI::App* coverage =
      app.add_subcommand("coverage", "Simultaneous-coverage study");
  add_common(coverage, coverage_opts);

  CommonOpts compare_opts;
  CLI::App* compare = app.add_subcommand(
      "compare", "Width comparison against BLB/SDB and the oracle");
  add_common(compare, compare_opts);

  CommonOpts bench_opts;
  CLI::App* bench =
      app.add_subcommand("bench", "Wall-time table per method and k");
  add_common(bench, bench_opts);

  CommonOpts oracle_opts;
  CLI::App* oracle = app.add_subcommand(
      "oracle-width", "Centralized oracle width for the configured design");
  add_common(oracle, oracle_opts);

  CLI::App* tau = app.add_subcommand(
      "tau-min", "Minimal communication rounds prescribed by the theory");
  std::string family_str = "linear";
  std::string method_str = "nk1grad";
  double gamma_n = 0.0;
  double gamma_k = 0.0;
  std::string tau_format = "text";
  tau->add_option("--family", family_str, "Model family")
      ->check(CLI::IsMember({"linear", "glm"}))
      ->required();
  tau->add_option("--method", method_str, "Bootstrap method")
      ->check(CLI::IsMember({"kgrad", "nk1grad"}))
      ->required();
  tau->add_option("--gamma-n", gamma_n, "Exponent with n = d^gamma_n")
      ->required();
  tau->add_option("--gamma-k", gamma_k, "Exponent with k = d^gamma_k")
      ->required();
  tau->add_option("--format", tau_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (coverage->parsed()) {
      deliver(distboot::run_coverage_experiment(load_config(coverage_opts)),
              coverage_opts);
    } else if (compare->parsed()) {
      deliver(distboot::run_comparison(load_config(compare_opts)),
              compare_opts);
    } else if (bench->parsed()) {
      deliver(distboot::run_bench(load_config(bench_opts)), bench_opts);
    } else if (oracle->parsed()) {
      distboot::ExperimentConfig cfg = load_config(oracle_opts);
      distboot::DesignSpec design = cfg.design;
      design.theta_star = distboot::resolve_theta_star(cfg);
      const double width = distboot::oracle_width(
          design, cfg.N, cfg.oracle_reps, cfg.alpha,
          distboot::SeedSpec{cfg.root_seed, {}}.with(
              distboot::stream::kOracleData),
          cfg.norm, cfg.solver, cfg.threads);
      if (oracle_opts.format == "json") {
        std::printf("{\"oracle_width\": %.17g}\n", width);
      } else {
        std::printf("%.17g\n", width);
      }
    } else if (tau->parsed()) {
      const distboot::ModelClass family = family_str == "linear"
                                              ? distboot::ModelClass::Linear
                                              : distboot::ModelClass::Glm;
      const distboot::BootMethod method =
          method_str == "kgrad" ? distboot::BootMethod::KGrad
                                : distboot::BootMethod::NK1Grad;
      const distboot::TauPlan plan =
          distboot::tau_min(family, method, gamma_n, gamma_k);
      if (tau_format == "json") {
        const std::string nu0_str =
            std::isnan(plan.nu0) ? "null" : std::to_string(plan.nu0);
        std::printf(
            "{\"gamma_n\": %g, \"gamma_k\": %g, \"feasible\": %s, "
            "\"tau_min\": %d, \"tau0\": %d, \"nu0\": %s, "
            "\"nu0_degenerate\": %s}\n",
            plan.gamma_n, plan.gamma_k, plan.feasible ? "true" : "false",
            plan.tau_min, plan.tau0, nu0_str.c_str(),
            plan.nu0_degenerate ? "true" : "false");
      } else {
        std::printf("gamma_n: %g\ngamma_k: %g\nfeasible: %s\n", plan.gamma_n,
                    plan.gamma_k, plan.feasible ? "true" : "false");
        if (plan.feasible) {
          std::printf("tau_min: %d\n", plan.tau_min);
          if (family == distboot::ModelClass::Glm) {
            std::printf("tau0: %d\nnu0: %g%s\n", plan.tau0, plan.nu0,
                        plan.nu0_degenerate ? " (degenerate boundary)" : "");
          }
        }
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
