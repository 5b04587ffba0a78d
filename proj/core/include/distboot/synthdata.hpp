#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "distboot/model.hpp"
#include "distboot/rng.hpp"

namespace distboot {

enum class CovKind { Toeplitz, EquiCorr, Identity };

/// Synthetic data-generating process: x ~ N(0, Sigma(cov)), response per
/// model family. Toeplitz uses rho = 0.9, equi-correlation rho = 0.8.
struct DesignSpec {
  long d = 2;
  CovKind cov = CovKind::Toeplitz;
  ModelSpec model;
  Eigen::VectorXd theta_star;  // length d
  double noise_sd = 1.0;       // linear family only
};

/// A full dataset, row i = one datum.
struct Dataset {
  Eigen::MatrixXd X;  // N x d
  Eigen::VectorXd y;  // N

  long size() const { return X.rows(); }
  long dim() const { return X.cols(); }
  Datum datum(long i) const { return Datum{X.row(i).transpose(), y(i)}; }
  Shard as_shard() const { return Shard{X, y}; }
};

/// k equal shards of n observations each; shard index 0 is the master.
struct ShardedDataset {
  std::vector<Shard> shards;
  long n = 0;
  long k = 0;

  long N() const { return n * k; }
  long dim() const { return shards.empty() ? 0 : shards.front().dim(); }
  const Shard& master() const { return shards.front(); }
};

Eigen::MatrixXd build_covariance(CovKind cov, long d);

/// Coordinates i.i.d. Uniform[-0.5, 0.5], deterministic in the seed.
Eigen::VectorXd draw_theta_star(long d, const SeedSpec& seed);

Dataset sample_dataset(const DesignSpec& spec, long N, const SeedSpec& seed);

/// Contiguous blocks of size n = N/k, in order. Throws if k does not
/// divide N.
ShardedDataset shard(const Dataset& data, long k);

/// Debug dump/load, columns x_1..x_d,y.
void dataset_write_csv(const Dataset& data, const std::string& path);
Dataset dataset_read_csv(const std::string& path);

}  // namespace distboot
