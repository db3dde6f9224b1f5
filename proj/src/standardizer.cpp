#include "forte/standardizer.hpp"

#include <cmath>

#include "forte/errors.hpp"

namespace forte {

Standardizer standardize_fit(const FeatureMatrix& x, double epsilon) {
  if (x.n == 0 || x.c == 0) throw DataError("standardize_fit: empty input");
  Standardizer s;
  s.epsilon = epsilon;
  s.mean.assign(x.c, 0.0);
  s.scale.assign(x.c, 1.0);
  for (std::size_t j = 0; j < x.c; ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.n; ++i) m += x.at(i, j);
    m /= static_cast<double>(x.n);
    double v = 0.0;
    for (std::size_t i = 0; i < x.n; ++i) {
      double d = x.at(i, j) - m;
      v += d * d;
    }
    double sd = std::sqrt(v / static_cast<double>(x.n));
    s.mean[j] = m;
    s.scale[j] = sd < epsilon ? 1.0 : sd;  // constant columns center only
  }
  return s;
}

FeatureMatrix standardize_apply(const Standardizer& s, const FeatureMatrix& x) {
  if (x.c != s.mean.size()) throw DataError("standardize_apply: column count mismatch");
  FeatureMatrix out = x;
  for (std::size_t i = 0; i < x.n; ++i) {
    for (std::size_t j = 0; j < x.c; ++j) {
      out.at(i, j) = (x.at(i, j) - s.mean[j]) / s.scale[j];
    }
  }
  return out;
}

}  // namespace forte
