#include "distboot/synthdata.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace distboot {

Eigen::MatrixXd build_covariance(CovKind cov, long d) {
  if (d < 1) throw std::invalid_argument("covariance: d must be >= 1");
  Eigen::MatrixXd sigma(d, d);
  switch (cov) {
    case CovKind::Toeplitz:
      for (long i = 0; i < d; ++i) {
        for (long j = 0; j < d; ++j) {
          sigma(i, j) = std::pow(0.9, std::abs(i - j));
        }
      }
      break;
    case CovKind::EquiCorr:
      sigma.setConstant(0.8);
      sigma.diagonal().setOnes();
      break;
    case CovKind::Identity:
      sigma.setIdentity();
      break;
  }
  return sigma;
}

Eigen::VectorXd draw_theta_star(long d, const SeedSpec& seed) {
  Rng rng(seed);
  Eigen::VectorXd theta(d);
  for (long i = 0; i < d; ++i) theta(i) = rng.uniform01() - 0.5;
  return theta;
}

Dataset sample_dataset(const DesignSpec& spec, long N, const SeedSpec& seed) {
  if (N < 1) throw std::invalid_argument("sample_dataset: N must be >= 1");
  if (spec.theta_star.size() != spec.d) {
    throw std::invalid_argument("sample_dataset: theta_star has wrong length");
  }
  const Eigen::MatrixXd sigma = build_covariance(spec.cov, spec.d);
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("sample_dataset: covariance not PD");
  }
  const Eigen::MatrixXd L = llt.matrixL();

  Rng rng(seed);
  Dataset data;
  data.X.resize(N, spec.d);
  data.y.resize(N);
  Eigen::VectorXd z(spec.d);
  for (long i = 0; i < N; ++i) {
    for (long j = 0; j < spec.d; ++j) z(j) = rng.normal();
    data.X.row(i) = (L * z).transpose();
    const double b = data.X.row(i).dot(spec.theta_star);
    if (spec.model.family == ModelFamily::Linear) {
      data.y(i) = b + spec.noise_sd * rng.normal();
    } else {
      data.y(i) = rng.uniform01() < sigmoid(b) ? 1.0 : 0.0;
    }
  }
  return data;
}

ShardedDataset shard(const Dataset& data, long k) {
  const long N = data.size();
  if (k < 1) throw std::invalid_argument("shard: k must be >= 1");
  if (N % k != 0) {
    std::ostringstream msg;
    msg << "shard: k = " << k << " does not divide N = " << N;
    throw std::invalid_argument(msg.str());
  }
  const long n = N / k;
  ShardedDataset out;
  out.n = n;
  out.k = k;
  out.shards.reserve(static_cast<std::size_t>(k));
  for (long j = 0; j < k; ++j) {
    out.shards.push_back(Shard{data.X.middleRows(j * n, n),
                               data.y.segment(j * n, n)});
  }
  return out;
}

void dataset_write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (long j = 0; j < data.dim(); ++j) out << "x_" << (j + 1) << ",";
  out << "y\n";
  char buf[32];
  for (long i = 0; i < data.size(); ++i) {
    for (long j = 0; j < data.dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", data.X(i, j));
      out << buf << ",";
    }
    std::snprintf(buf, sizeof buf, "%.17g", data.y(i));
    out << buf << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Dataset dataset_read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
  long d = 0;
  for (char c : line) {
    if (c == ',') ++d;  // d covariate columns, then y
  }
  if (d < 1) throw std::runtime_error("bad header in " + path);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<long>(row.size()) != d + 1) {
      throw std::runtime_error("bad row in " + path);
    }
    rows.push_back(std::move(row));
  }
  Dataset data;
  data.X.resize(static_cast<long>(rows.size()), d);
  data.y.resize(static_cast<long>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (long j = 0; j < d; ++j) data.X(static_cast<long>(i), j) = rows[i][j];
    data.y(static_cast<long>(i)) = rows[i][static_cast<std::size_t>(d)];
  }
  return data;
}

}  // namespace distboot
