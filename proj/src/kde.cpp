#include "forte/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "forte/errors.hpp"

namespace forte {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;
}

KdeModel kde_fit(const FeatureMatrix& x, const KdeParams& params) {
  if (x.n == 0 || x.c == 0) throw DataError("kde_fit: empty input");
  KdeModel m;
  m.params = params;
  m.points = x;
  if (params.rule == BandwidthRule::Fixed) {
    if (params.fixed_bandwidth <= 0.0) throw DataError("kde_fit: bandwidth must be positive");
    m.bandwidth = params.fixed_bandwidth;
    return m;
  }
  if (x.n < 2) throw DataError("kde_fit: data-driven bandwidth needs at least 2 points");
  double n = static_cast<double>(x.n);
  double f = static_cast<double>(x.c);
  // sigma_bar: mean per-column sample std
  double sigma_bar = 0.0;
  for (std::size_t j = 0; j < x.c; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < x.n; ++i) mean += x.at(i, j);
    mean /= n;
    double v = 0.0;
    for (std::size_t i = 0; i < x.n; ++i) {
      double d = x.at(i, j) - mean;
      v += d * d;
    }
    sigma_bar += std::sqrt(v / (n - 1.0));
  }
  sigma_bar /= f;
  double h = params.rule == BandwidthRule::Scott
                 ? std::pow(n, -1.0 / (f + 4.0)) * sigma_bar
                 : std::pow(n * (f + 2.0) / 4.0, -1.0 / (f + 4.0)) * sigma_bar;
  if (h <= 0.0) throw NumericError("kde_fit: degenerate data, bandwidth is zero");
  m.bandwidth = h;
  return m;
}

std::vector<double> kde_log_density(const KdeModel& model, const FeatureMatrix& q) {
  if (q.c != model.points.c) throw DataError("kde_log_density: feature count mismatch");
  const double h2 = model.bandwidth * model.bandwidth;
  const double f = static_cast<double>(q.c);
  const double log_norm =
      -std::log(static_cast<double>(model.points.n)) - 0.5 * f * (kLog2Pi + std::log(h2));
  std::vector<double> out(q.n);
  std::vector<double> exponents(model.points.n);
  for (std::size_t i = 0; i < q.n; ++i) {
    auto qi = q.row(i);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < model.points.n; ++p) {
      auto xp = model.points.row(p);
      double acc = 0.0;
      for (std::size_t j = 0; j < q.c; ++j) {
        double d = qi[j] - xp[j];
        acc += d * d;
      }
      exponents[p] = -0.5 * acc / h2;
      best = std::max(best, exponents[p]);
    }
    double sum = 0.0;
    for (double e : exponents) sum += std::exp(e - best);
    out[i] = log_norm + best + std::log(sum);
  }
  return out;
}

}  // namespace forte
