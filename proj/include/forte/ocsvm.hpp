#pragma once

#include <cstddef>
#include <vector>

#include "forte/matrix.hpp"

namespace forte {

struct OcsvmParams {
  double nu = 0.05;
  bool gamma_scale = true;    // gamma = 1/(f * mean per-column variance)
  double fixed_gamma = 0.0;   // used when gamma_scale == false
  double tol = 1e-6;
  std::size_t max_iter = 1000000;
};

/// One-class SVM with RBF kernel, trained by SMO on the dual
///   min 1/2 a^T K a   s.t.  0 <= a_i <= 1/(nu*n),  sum a = 1.
/// decision(q) = sum_i a_i K(x_i, q) - rho; positive = inlier.
struct OcsvmModel {
  FeatureMatrix support_vectors;
  std::vector<double> alpha;  // matching support_vectors rows
  double rho = 0.0;
  double gamma = 0.0;
  double nu = 0.0;
  std::size_t n_train = 0;
  OcsvmParams params;
  bool converged = false;
  std::size_t iterations = 0;
  double kkt_violation = 0.0;  // final max violation
};

OcsvmModel ocsvm_fit(const FeatureMatrix& x, const OcsvmParams& params);

std::vector<double> ocsvm_decision(const OcsvmModel& model, const FeatureMatrix& q);

}  // namespace forte
