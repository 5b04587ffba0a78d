#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "distboot/baselines.hpp"
#include "distboot/bootstrap.hpp"
#include "distboot/parallel.hpp"
#include "distboot/synthdata.hpp"

namespace distboot {

/// One experiment sweep: a single design (d, covariance, family) crossed
/// with grids over k and tau. theta_star in `design` may be left empty;
/// it is then drawn once from the root seed and reused for every
/// replication and cell.
struct ExperimentConfig {
  DesignSpec design;
  long N = 4096;
  std::vector<long> k_grid{16};
  std::vector<int> tau_grid{2};
  std::vector<BootMethod> methods{BootMethod::KGrad, BootMethod::NK1Grad};
  long B = 500;
  double alpha = 0.95;
  long reps = 200;
  long oracle_reps = 200;
  long blb_resamples = 100;
  long bench_runs = 50;
  NormFunctional norm = NormFunctional::sup();
  std::uint64_t root_seed = 42;
  int threads = 1;  // 0 = hardware concurrency
  SolverConfig solver;
};

/// One aggregated cell. Fields that a given run kind does not produce
/// (e.g. coverage for the width-only baselines) are NaN.
struct ReportRow {
  long d = 0;
  long k = 0;
  long n = 0;
  int tau = 0;
  std::string method;
  double coverage = 0.0;
  double avg_width = 0.0;
  double oracle_width = 0.0;
  double wall_time_s = 0.0;
  long comm_rounds = 0;
  long failures = 0;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
};

/// Simultaneous-coverage study: per replication, sample + shard + CSL +
/// bootstrap, record covers() and the region width; aggregate per
/// (k, tau, method) cell. Replications that throw SingularHessian or
/// NoConvergence are counted as failures and excluded.
ExperimentReport run_coverage_experiment(const ExperimentConfig& cfg);

/// Width comparison of the gradient methods against BLB and SDB, plus
/// the oracle width, per k.
ExperimentReport run_comparison(const ExperimentConfig& cfg);

/// Wall-time table: bench_runs independent timed runs per (method, k)
/// cell, each covering dataset generation, sharding, and the method.
/// Runs execute serially; wall_time_s is a trimmed mean (top and bottom
/// fifth dropped once bench_runs >= 5) so scheduler hiccups do not skew
/// a cell.
ExperimentReport run_bench(const ExperimentConfig& cfg);

std::string report_to_csv(const ExperimentReport& report);
std::string report_to_json(const ExperimentReport& report);
ExperimentReport report_from_csv_text(const std::string& text);
ExperimentReport report_from_json_text(const std::string& text);

/// format is "csv" or "json".
void emit_report(const ExperimentReport& report, const std::string& format,
                 const std::string& path);
ExperimentReport load_report(const std::string& format,
                             const std::string& path);

/// Field-exact comparison (NaN == NaN); wall times optionally ignored
/// since they are the one nondeterministic column.
bool reports_equal(const ExperimentReport& a, const ExperimentReport& b,
                   bool ignore_wall_time);

ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig config_from_json_file(const std::string& path);
std::string config_to_json_text(const ExperimentConfig& cfg);

const char* method_name(BootMethod method);
std::string norm_name(const NormFunctional& norm);
NormFunctional parse_norm(const std::string& text);

/// The config's theta_star if set, otherwise the draw from
/// (root_seed, theta-star stream, d).
Eigen::VectorXd resolve_theta_star(const ExperimentConfig& cfg);

}  // namespace distboot
