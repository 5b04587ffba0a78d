#include "distboot/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "distboot/cluster.hpp"
#include "distboot/csl.hpp"

namespace distboot {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t method_tag(BootMethod m) {
  return m == BootMethod::KGrad ? 0 : 1;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.design.d < 1) throw std::invalid_argument("config: d must be >= 1");
  if (cfg.N < 1) throw std::invalid_argument("config: N must be >= 1");
  if (cfg.k_grid.empty()) throw std::invalid_argument("config: empty k_grid");
  for (long k : cfg.k_grid) {
    if (k < 1 || cfg.N % k != 0) {
      std::ostringstream msg;
      msg << "config: k = " << k << " must divide N = " << cfg.N;
      throw std::invalid_argument(msg.str());
    }
  }
  if (cfg.tau_grid.empty()) throw std::invalid_argument("config: empty tau_grid");
  for (int tau : cfg.tau_grid) {
    if (tau < 1) throw std::invalid_argument("config: tau must be >= 1");
  }
  if (cfg.methods.empty()) throw std::invalid_argument("config: no methods");
  if (cfg.B < 1) throw std::invalid_argument("config: B must be >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw std::invalid_argument("config: alpha must be in (0,1)");
  }
  if (cfg.reps < 1) throw std::invalid_argument("config: reps must be >= 1");
  if (cfg.oracle_reps < 1) {
    throw std::invalid_argument("config: oracle_reps must be >= 1");
  }
  if (cfg.blb_resamples < 1) {
    throw std::invalid_argument("config: blb_resamples must be >= 1");
  }
  if (cfg.bench_runs < 1) {
    throw std::invalid_argument("config: bench_runs must be >= 1");
  }
  if (!(cfg.design.noise_sd > 0.0)) {
    throw std::invalid_argument("config: noise_sd must be positive");
  }
  if (cfg.norm.kind == NormFunctional::Kind::Coordinate &&
      (cfg.norm.l < 1 || cfg.norm.l > cfg.design.d)) {
    throw std::invalid_argument("config: norm coordinate out of range");
  }
}

// Outcome of one replication for one method.
struct RepOutcome {
  bool failed = true;
  bool covered = false;
  double width = 0.0;
  double seconds = 0.0;
};

// Mean of the middle of the sample: with at least five runs, the top and
// bottom fifth are dropped so one descheduled run cannot skew a cell.
double trimmed_mean_seconds(std::vector<double> secs) {
  if (secs.empty()) return kNaN;
  std::sort(secs.begin(), secs.end());
  const std::size_t trim = secs.size() >= 5 ? secs.size() / 5 : 0;
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = trim; i < secs.size() - trim; ++i) {
    total += secs[i];
    ++count;
  }
  return total / static_cast<double>(count);
}

ReportRow aggregate_cell(const ExperimentConfig& cfg, long k, int tau,
                         const std::string& method,
                         const std::vector<RepOutcome>& outcomes,
                         double oracle_w, long comm_rounds) {
  ReportRow row;
  row.d = cfg.design.d;
  row.k = k;
  row.n = cfg.N / k;
  row.tau = tau;
  row.method = method;
  row.oracle_width = oracle_w;
  row.comm_rounds = comm_rounds;
  long ok = 0;
  long covered = 0;
  double width_sum = 0.0;
  double time_sum = 0.0;
  for (const RepOutcome& o : outcomes) {
    if (o.failed) {
      ++row.failures;
      continue;
    }
    ++ok;
    covered += o.covered ? 1 : 0;
    width_sum += o.width;
    time_sum += o.seconds;
  }
  if (ok > 0) {
    row.coverage = static_cast<double>(covered) / static_cast<double>(ok);
    row.avg_width = width_sum / static_cast<double>(ok);
    row.wall_time_s = time_sum / static_cast<double>(ok);
  } else {
    row.coverage = kNaN;
    row.avg_width = kNaN;
    row.wall_time_s = kNaN;
  }
  return row;
}

bool wants(const ExperimentConfig& cfg, BootMethod m) {
  for (BootMethod c : cfg.methods) {
    if (c == m) return true;
  }
  return false;
}

// Shared by the coverage and comparison runs: one (k, tau) cell of the
// gradient-method pipeline, one entry per replication and method.
std::vector<std::vector<RepOutcome>> run_gradient_cell(
    const ExperimentConfig& cfg, const DesignSpec& design, long k, int tau) {
  const SeedSpec root{cfg.root_seed, {}};
  const long n = cfg.N / k;
  const bool need_master =
      wants(cfg, BootMethod::NK1Grad);
  std::vector<std::vector<RepOutcome>> out(
      cfg.methods.size(),
      std::vector<RepOutcome>(static_cast<std::size_t>(cfg.reps)));

  parallel_for(cfg.reps, cfg.threads, [&](long rep) {
    const auto t0 = Clock::now();
    const Dataset data = sample_dataset(
        design, cfg.N,
        root.with(stream::kData)
            .with(static_cast<std::uint64_t>(k))
            .with(static_cast<std::uint64_t>(tau))
            .with(static_cast<std::uint64_t>(rep)));
    const Cluster cluster(shard(data, k), design.model);
    CslRunResult run;
    std::vector<Eigen::VectorXd> master_grads;
    try {
      run = csl_run(cluster, tau, cfg.solver);
      if (need_master) {
        master_grads = cluster.master_per_datum_gradients(run.theta_prev);
      }
    } catch (const SingularHessianError&) {
      return;  // all methods stay failed for this replication
    } catch (const NoConvergenceError&) {
      return;
    }
    const double csl_seconds = seconds_since(t0);
    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
      const BootMethod m = cfg.methods[mi];
      const auto tb = Clock::now();
      try {
        const BootstrapSummary summary = dist_boots(
            m, run.theta, run.shard_grads, master_grads, run.inv_hessian, n,
            cfg.B, cfg.alpha, cfg.norm,
            root.with(stream::kMultipliers)
                .with(method_tag(m))
                .with(static_cast<std::uint64_t>(k))
                .with(static_cast<std::uint64_t>(tau))
                .with(static_cast<std::uint64_t>(rep)));
        RepOutcome& o = out[mi][static_cast<std::size_t>(rep)];
        o.failed = false;
        o.covered = covers(design.theta_star, run.theta, summary.c_alpha,
                           cfg.N, cfg.norm);
        o.width = 2.0 * summary.c_alpha /
                  std::sqrt(static_cast<double>(cfg.N));
        o.seconds = csl_seconds + seconds_since(tb);
      } catch (const SingularHessianError&) {
      } catch (const NoConvergenceError&) {
      }
    }
    // CSL is the only thing allowed to talk to the workers: exactly one
    // round per iteration, none during bootstrapping.
    if (cluster.rounds() != static_cast<std::uint64_t>(tau)) {
      throw std::logic_error("harness: ledger rounds != tau");
    }
  });
  return out;
}

}  // namespace

Eigen::VectorXd resolve_theta_star(const ExperimentConfig& cfg) {
  if (cfg.design.theta_star.size() == cfg.design.d) {
    return cfg.design.theta_star;
  }
  if (cfg.design.theta_star.size() != 0) {
    throw std::invalid_argument("config: theta_star has wrong length");
  }
  return draw_theta_star(
      cfg.design.d, SeedSpec{cfg.root_seed, {}}
                        .with(stream::kThetaStar)
                        .with(static_cast<std::uint64_t>(cfg.design.d)));
}

ExperimentReport run_coverage_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  DesignSpec design = cfg.design;
  design.theta_star = resolve_theta_star(cfg);
  const SeedSpec root{cfg.root_seed, {}};
  const double oracle_w =
      oracle_width(design, cfg.N, cfg.oracle_reps, cfg.alpha,
                   root.with(stream::kOracleData), cfg.norm, cfg.solver,
                   cfg.threads);

  ExperimentReport report;
  for (long k : cfg.k_grid) {
    for (int tau : cfg.tau_grid) {
      const auto outcomes = run_gradient_cell(cfg, design, k, tau);
      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        report.rows.push_back(aggregate_cell(cfg, k, tau,
                                             method_name(cfg.methods[mi]),
                                             outcomes[mi], oracle_w, tau));
      }
    }
  }
  return report;
}

ExperimentReport run_comparison(const ExperimentConfig& cfg) {
  validate(cfg);
  DesignSpec design = cfg.design;
  design.theta_star = resolve_theta_star(cfg);
  const SeedSpec root{cfg.root_seed, {}};
  const double oracle_w =
      oracle_width(design, cfg.N, cfg.oracle_reps, cfg.alpha,
                   root.with(stream::kOracleData), cfg.norm, cfg.solver,
                   cfg.threads);

  ExperimentReport report;
  for (long k : cfg.k_grid) {
    for (int tau : cfg.tau_grid) {
      const auto outcomes = run_gradient_cell(cfg, design, k, tau);
      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        report.rows.push_back(aggregate_cell(cfg, k, tau,
                                             method_name(cfg.methods[mi]),
                                             outcomes[mi], oracle_w, tau));
      }
    }

    // Resampling baselines: width only, no tau, no communication model.
    std::vector<RepOutcome> blb(static_cast<std::size_t>(cfg.reps));
    std::vector<RepOutcome> sdb(static_cast<std::size_t>(cfg.reps));
    parallel_for(cfg.reps, cfg.threads, [&](long rep) {
      const Dataset data = sample_dataset(
          design, cfg.N,
          root.with(stream::kData)
              .with(static_cast<std::uint64_t>(k))
              .with(0)
              .with(static_cast<std::uint64_t>(rep)));
      const ShardedDataset sharded = shard(data, k);
      const SeedSpec rep_seed = root.with(stream::kResample)
                                    .with(static_cast<std::uint64_t>(k))
                                    .with(static_cast<std::uint64_t>(rep));
      try {
        const auto t0 = Clock::now();
        const double w =
            blb_width(sharded, design.model,
                      BlbConfig{cfg.blb_resamples, cfg.alpha},
                      rep_seed.with(0), cfg.solver);
        auto& o = blb[static_cast<std::size_t>(rep)];
        o.failed = false;
        o.width = w;
        o.seconds = seconds_since(t0);
      } catch (const SingularHessianError&) {
      } catch (const NoConvergenceError&) {
      }
      try {
        const auto t0 = Clock::now();
        const double w = sdb_width(sharded, design.model, cfg.alpha,
                                   rep_seed.with(1), cfg.solver);
        auto& o = sdb[static_cast<std::size_t>(rep)];
        o.failed = false;
        o.width = w;
        o.seconds = seconds_since(t0);
      } catch (const SingularHessianError&) {
      } catch (const NoConvergenceError&) {
      }
    });
    ReportRow blb_row = aggregate_cell(cfg, k, 0, "blb", blb, oracle_w, 0);
    blb_row.coverage = kNaN;  // width-only baseline
    ReportRow sdb_row = aggregate_cell(cfg, k, 0, "sdb", sdb, oracle_w, 0);
    sdb_row.coverage = kNaN;
    report.rows.push_back(std::move(blb_row));
    report.rows.push_back(std::move(sdb_row));
  }
  return report;
}

ExperimentReport run_bench(const ExperimentConfig& cfg) {
  validate(cfg);
  DesignSpec design = cfg.design;
  design.theta_star = resolve_theta_star(cfg);
  const SeedSpec root{cfg.root_seed, {}};

  // One timed run = generate data, shard, run the method end to end.
  // Runs execute serially so timings do not contend.
  struct BenchMethod {
    std::string name;
    bool gradient;
    BootMethod boot;  // gradient methods only
  };
  std::vector<BenchMethod> methods;
  for (BootMethod m : cfg.methods) {
    methods.push_back({method_name(m), true, m});
  }
  methods.push_back({"sdb", false, BootMethod::KGrad});
  methods.push_back({"blb", false, BootMethod::KGrad});

  ExperimentReport report;
  for (long k : cfg.k_grid) {
    const long n = cfg.N / k;
    for (const BenchMethod& bm : methods) {
      const std::vector<int> taus =
          bm.gradient ? cfg.tau_grid : std::vector<int>{0};
      for (int tau : taus) {
        std::vector<RepOutcome> outcomes(
            static_cast<std::size_t>(cfg.bench_runs));
        for (long run_id = 0; run_id < cfg.bench_runs; ++run_id) {
          const SeedSpec run_seed =
              root.with(stream::kData)
                  .with(static_cast<std::uint64_t>(k))
                  .with(mix64(static_cast<std::uint64_t>(tau) * 4 +
                              (bm.gradient ? method_tag(bm.boot) : 2 +
                               (bm.name == "blb" ? 1 : 0))))
                  .with(static_cast<std::uint64_t>(run_id));
          auto& o = outcomes[static_cast<std::size_t>(run_id)];
          try {
            const auto t0 = Clock::now();
            const Dataset data = sample_dataset(design, cfg.N, run_seed);
            const ShardedDataset sharded = shard(data, k);
            if (bm.gradient) {
              const Cluster cluster(sharded, design.model);
              const CslRunResult r = csl_run(cluster, tau, cfg.solver);
              std::vector<Eigen::VectorXd> master_grads;
              if (bm.boot == BootMethod::NK1Grad) {
                master_grads =
                    cluster.master_per_datum_gradients(r.theta_prev);
              }
              dist_boots(bm.boot, r.theta, r.shard_grads, master_grads,
                         r.inv_hessian, n, cfg.B, cfg.alpha, cfg.norm,
                         run_seed.with(stream::kMultipliers));
            } else if (bm.name == "blb") {
              blb_width(sharded, design.model,
                        BlbConfig{cfg.blb_resamples, cfg.alpha},
                        run_seed.with(stream::kResample), cfg.solver);
            } else {
              sdb_width(sharded, design.model, cfg.alpha,
                        run_seed.with(stream::kResample), cfg.solver);
            }
            o.failed = false;
            o.seconds = seconds_since(t0);
          } catch (const SingularHessianError&) {
          } catch (const NoConvergenceError&) {
          }
        }
        ReportRow row = aggregate_cell(cfg, k, tau, bm.name, outcomes, kNaN,
                                       bm.gradient ? tau : 0);
        row.coverage = kNaN;
        row.avg_width = kNaN;
        std::vector<double> secs;
        for (const RepOutcome& o : outcomes) {
          if (!o.failed) secs.push_back(o.seconds);
        }
        row.wall_time_s = trimmed_mean_seconds(std::move(secs));
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* kCsvHeader =
    "d,k,n,tau,method,coverage,avg_width,oracle_width,wall_time_s,"
    "comm_rounds,failures";

}  // namespace

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const ReportRow& r : report.rows) {
    out << r.d << ',' << r.k << ',' << r.n << ',' << r.tau << ','
        << r.method << ',' << format_double(r.coverage) << ','
        << format_double(r.avg_width) << ','
        << format_double(r.oracle_width) << ','
        << format_double(r.wall_time_s) << ',' << r.comm_rounds << ','
        << r.failures << "\n";
  }
  return out.str();
}

ExperimentReport report_from_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("report CSV: bad header");
  }
  ExperimentReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11) throw std::runtime_error("report CSV: bad row");
    ReportRow r;
    r.d = std::stol(cells[0]);
    r.k = std::stol(cells[1]);
    r.n = std::stol(cells[2]);
    r.tau = std::stoi(cells[3]);
    r.method = cells[4];
    r.coverage = std::stod(cells[5]);
    r.avg_width = std::stod(cells[6]);
    r.oracle_width = std::stod(cells[7]);
    r.wall_time_s = std::stod(cells[8]);
    r.comm_rounds = std::stol(cells[9]);
    r.failures = std::stol(cells[10]);
    report.rows.push_back(std::move(r));
  }
  return report;
}

namespace {

nlohmann::json json_double(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

double double_from_json(const nlohmann::json& j) {
  if (j.is_null()) return kNaN;
  return j.get<double>();
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& r : report.rows) {
    rows.push_back({{"d", r.d},
                    {"k", r.k},
                    {"n", r.n},
                    {"tau", r.tau},
                    {"method", r.method},
                    {"coverage", json_double(r.coverage)},
                    {"avg_width", json_double(r.avg_width)},
                    {"oracle_width", json_double(r.oracle_width)},
                    {"wall_time_s", json_double(r.wall_time_s)},
                    {"comm_rounds", r.comm_rounds},
                    {"failures", r.failures}});
  }
  return rows.dump(2) + "\n";
}

ExperimentReport report_from_json_text(const std::string& text) {
  const nlohmann::json rows = nlohmann::json::parse(text);
  if (!rows.is_array()) throw std::runtime_error("report JSON: not an array");
  ExperimentReport report;
  for (const auto& j : rows) {
    ReportRow r;
    r.d = j.at("d").get<long>();
    r.k = j.at("k").get<long>();
    r.n = j.at("n").get<long>();
    r.tau = j.at("tau").get<int>();
    r.method = j.at("method").get<std::string>();
    r.coverage = double_from_json(j.at("coverage"));
    r.avg_width = double_from_json(j.at("avg_width"));
    r.oracle_width = double_from_json(j.at("oracle_width"));
    r.wall_time_s = double_from_json(j.at("wall_time_s"));
    r.comm_rounds = j.at("comm_rounds").get<long>();
    r.failures = j.at("failures").get<long>();
    report.rows.push_back(std::move(r));
  }
  return report;
}

void emit_report(const ExperimentReport& report, const std::string& format,
                 const std::string& path) {
  std::string text;
  if (format == "csv") {
    text = report_to_csv(report);
  } else if (format == "json") {
    text = report_to_json(report);
  } else {
    throw std::invalid_argument("emit_report: format must be csv or json");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

ExperimentReport load_report(const std::string& format,
                             const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  if (format == "csv") return report_from_csv_text(buf.str());
  if (format == "json") return report_from_json_text(buf.str());
  throw std::invalid_argument("load_report: format must be csv or json");
}

namespace {

bool double_eq(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

}  // namespace

bool reports_equal(const ExperimentReport& a, const ExperimentReport& b,
                   bool ignore_wall_time) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const ReportRow& x = a.rows[i];
    const ReportRow& y = b.rows[i];
    if (x.d != y.d || x.k != y.k || x.n != y.n || x.tau != y.tau ||
        x.method != y.method || x.comm_rounds != y.comm_rounds ||
        x.failures != y.failures) {
      return false;
    }
    if (!double_eq(x.coverage, y.coverage) ||
        !double_eq(x.avg_width, y.avg_width) ||
        !double_eq(x.oracle_width, y.oracle_width)) {
      return false;
    }
    if (!ignore_wall_time && !double_eq(x.wall_time_s, y.wall_time_s)) {
      return false;
    }
  }
  return true;
}

const char* method_name(BootMethod method) {
  return method == BootMethod::KGrad ? "kgrad" : "nk1grad";
}

std::string norm_name(const NormFunctional& norm) {
  switch (norm.kind) {
    case NormFunctional::Kind::SupNorm:
      return "sup";
    case NormFunctional::Kind::L2:
      return "l2";
    case NormFunctional::Kind::Coordinate:
      return "coord:" + std::to_string(norm.l);
  }
  throw std::logic_error("unreachable");
}

NormFunctional parse_norm(const std::string& text) {
  if (text == "sup") return NormFunctional::sup();
  if (text == "l2") return NormFunctional::l2();
  if (text.rfind("coord:", 0) == 0) {
    const long l = std::stol(text.substr(6));
    if (l < 1) throw std::invalid_argument("norm: coordinate must be >= 1");
    return NormFunctional::coordinate(l);
  }
  throw std::invalid_argument("norm must be sup, l2, or coord:<l>");
}

namespace {

BootMethod parse_method(const std::string& text) {
  if (text == "kgrad") return BootMethod::KGrad;
  if (text == "nk1grad") return BootMethod::NK1Grad;
  throw std::invalid_argument("method must be kgrad or nk1grad");
}

CovKind parse_cov(const std::string& text) {
  if (text == "toeplitz") return CovKind::Toeplitz;
  if (text == "equicorr") return CovKind::EquiCorr;
  if (text == "identity") return CovKind::Identity;
  throw std::invalid_argument("cov must be toeplitz, equicorr, or identity");
}

std::string cov_name(CovKind cov) {
  switch (cov) {
    case CovKind::Toeplitz:
      return "toeplitz";
    case CovKind::EquiCorr:
      return "equicorr";
    case CovKind::Identity:
      return "identity";
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::runtime_error("config: not a JSON object");
  static const std::vector<std::string> known = {
      "model", "cov", "d", "noise_sd", "theta_star", "N", "k_grid",
      "tau_grid", "methods", "B", "alpha", "reps", "oracle_reps",
      "blb_resamples", "bench_runs", "norm", "seed", "threads", "solver"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw std::runtime_error("config: unknown key \"" + it.key() + "\"");
    }
  }

  ExperimentConfig cfg;
  if (j.contains("model")) {
    const std::string m = j.at("model").get<std::string>();
    if (m == "linear") {
      cfg.design.model.family = ModelFamily::Linear;
    } else if (m == "logistic") {
      cfg.design.model.family = ModelFamily::Logistic;
    } else {
      throw std::runtime_error("config: model must be linear or logistic");
    }
  }
  if (j.contains("cov")) cfg.design.cov = parse_cov(j.at("cov"));
  if (j.contains("d")) cfg.design.d = j.at("d").get<long>();
  if (j.contains("noise_sd")) {
    cfg.design.noise_sd = j.at("noise_sd").get<double>();
  }
  if (j.contains("theta_star")) {
    const auto v = j.at("theta_star").get<std::vector<double>>();
    cfg.design.theta_star =
        Eigen::Map<const Eigen::VectorXd>(v.data(),
                                          static_cast<long>(v.size()));
  }
  if (j.contains("N")) cfg.N = j.at("N").get<long>();
  if (j.contains("k_grid")) {
    cfg.k_grid = j.at("k_grid").get<std::vector<long>>();
  }
  if (j.contains("tau_grid")) {
    cfg.tau_grid = j.at("tau_grid").get<std::vector<int>>();
  }
  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& m : j.at("methods")) {
      cfg.methods.push_back(parse_method(m.get<std::string>()));
    }
  }
  if (j.contains("B")) cfg.B = j.at("B").get<long>();
  if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
  if (j.contains("reps")) cfg.reps = j.at("reps").get<long>();
  if (j.contains("oracle_reps")) {
    cfg.oracle_reps = j.at("oracle_reps").get<long>();
  }
  if (j.contains("blb_resamples")) {
    cfg.blb_resamples = j.at("blb_resamples").get<long>();
  }
  if (j.contains("bench_runs")) {
    cfg.bench_runs = j.at("bench_runs").get<long>();
  }
  if (j.contains("norm")) {
    cfg.norm = parse_norm(j.at("norm").get<std::string>());
  }
  if (j.contains("seed")) cfg.root_seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    if (s.contains("max_newton_iters")) {
      cfg.solver.max_newton_iters = s.at("max_newton_iters").get<int>();
    }
    if (s.contains("grad_tol")) {
      cfg.solver.grad_tol = s.at("grad_tol").get<double>();
    }
    if (s.contains("ridge")) cfg.solver.ridge = s.at("ridge").get<double>();
  }
  return cfg;
}

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["model"] = cfg.design.model.family == ModelFamily::Linear ? "linear"
                                                              : "logistic";
  j["cov"] = cov_name(cfg.design.cov);
  j["d"] = cfg.design.d;
  j["noise_sd"] = cfg.design.noise_sd;
  if (cfg.design.theta_star.size() > 0) {
    j["theta_star"] = std::vector<double>(
        cfg.design.theta_star.data(),
        cfg.design.theta_star.data() + cfg.design.theta_star.size());
  }
  j["N"] = cfg.N;
  j["k_grid"] = cfg.k_grid;
  j["tau_grid"] = cfg.tau_grid;
  std::vector<std::string> methods;
  for (BootMethod m : cfg.methods) methods.emplace_back(method_name(m));
  j["methods"] = methods;
  j["B"] = cfg.B;
  j["alpha"] = cfg.alpha;
  j["reps"] = cfg.reps;
  j["oracle_reps"] = cfg.oracle_reps;
  j["blb_resamples"] = cfg.blb_resamples;
  j["bench_runs"] = cfg.bench_runs;
  j["norm"] = norm_name(cfg.norm);
  j["seed"] = cfg.root_seed;
  j["threads"] = cfg.threads;
  j["solver"] = {{"max_newton_iters", cfg.solver.max_newton_iters},
                 {"grad_tol", cfg.solver.grad_tol},
                 {"ridge", cfg.solver.ridge}};
  return j.dump(2) + "\n";
}

}  // namespace distboot
