#pragma once

#include <cstdint>
#include <vector>

#include "forte/matrix.hpp"

namespace forte {

struct GmmParams {
  std::size_t n_components = 4;
  double tol = 1e-6;
  std::size_t max_iter = 500;
  double reg_floor = 1e-6;
};

/// Diagonal-covariance Gaussian mixture fitted by EM with k-means++-style
/// seeded initialization.
struct GmmModel {
  std::size_t n_components = 0;
  std::size_t n_features = 0;
  std::vector<double> weights;    // n_components, sums to 1
  std::vector<double> means;      // n_components x n_features
  std::vector<double> variances;  // n_components x n_features, each >= reg_floor
  GmmParams params;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double final_log_likelihood = 0.0;  // mean per-point
  bool converged = false;
  std::vector<double> log_likelihood_trace;  // mean per-point, per EM iteration
};

GmmModel gmm_fit(const FeatureMatrix& x, const GmmParams& params, std::uint64_t seed);

/// log sum_c w_c N(q; mu_c, diag(var_c)), log-sum-exp stabilized.
std::vector<double> gmm_log_density(const GmmModel& model, const FeatureMatrix& q);

}  // namespace forte
