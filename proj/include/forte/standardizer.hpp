#pragma once

#include <vector>

#include "forte/matrix.hpp"

namespace forte {

/// Per-column centering and scaling. Columns whose std falls below epsilon
/// are treated as constant: they are centered but scaled by 1, so fitting
/// data maps to 0 and new data stays bounded.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;  // std, or 1.0 for constant columns
  double epsilon = 1e-12;
};

Standardizer standardize_fit(const FeatureMatrix& x, double epsilon = 1e-12);
FeatureMatrix standardize_apply(const Standardizer& s, const FeatureMatrix& x);

}  // namespace forte
