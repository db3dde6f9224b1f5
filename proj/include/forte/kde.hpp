#pragma once

#include <vector>

#include "forte/matrix.hpp"

namespace forte {

enum class BandwidthRule { Scott, Silverman, Fixed };

struct KdeParams {
  BandwidthRule rule = BandwidthRule::Scott;
  double fixed_bandwidth = 0.0;  // used when rule == Fixed
};

/// Gaussian kernel density estimator with a single isotropic bandwidth.
///   Scott:     h = n^(-1/(f+4)) * sigma_bar
///   Silverman: h = (n*(f+2)/4)^(-1/(f+4)) * sigma_bar
/// where f is the feature count and sigma_bar the mean per-column sample std.
struct KdeModel {
  FeatureMatrix points;
  double bandwidth = 0.0;
  KdeParams params;
};

KdeModel kde_fit(const FeatureMatrix& x, const KdeParams& params);

/// log (1/n) sum_i N(q; x_i, h^2 I)
std::vector<double> kde_log_density(const KdeModel& model, const FeatureMatrix& q);

}  // namespace forte
