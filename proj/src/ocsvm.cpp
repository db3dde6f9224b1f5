#include "forte/ocsvm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "forte/errors.hpp"

namespace forte {

namespace {

double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double d = a[j] - b[j];
    acc += d * d;
  }
  return std::exp(-gamma * acc);
}

double scale_gamma(const FeatureMatrix& x) {
  double var_bar = 0.0;
  double n = static_cast<double>(x.n);
  for (std::size_t j = 0; j < x.c; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < x.n; ++i) mean += x.at(i, j);
    mean /= n;
    double v = 0.0;
    for (std::size_t i = 0; i < x.n; ++i) {
      double d = x.at(i, j) - mean;
      v += d * d;
    }
    var_bar += v / n;
  }
  var_bar /= static_cast<double>(x.c);
  if (var_bar <= 0.0) return 1.0;  // constant data, any gamma behaves identically
  return 1.0 / (static_cast<double>(x.c) * var_bar);
}

}  // namespace

OcsvmModel ocsvm_fit(const FeatureMatrix& x, const OcsvmParams& params) {
  if (params.nu <= 0.0 || params.nu > 1.0) throw DataError("ocsvm_fit: nu must be in (0, 1]");
  if (x.n < 2) throw DataError("ocsvm_fit: need at least 2 points");
  const std::size_t n = x.n;
  const double gamma = params.gamma_scale ? scale_gamma(x) : params.fixed_gamma;
  if (gamma <= 0.0) throw DataError("ocsvm_fit: gamma must be positive");
  const double upper = 1.0 / (params.nu * static_cast<double>(n));

  // full kernel matrix (calibration sets are small)
  std::vector<double> kmat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    kmat[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = rbf(x.row(i), x.row(j), gamma);
      kmat[i * n + j] = v;
      kmat[j * n + i] = v;
    }
  }

  // initial feasible point: fill the box from the front, sum alpha = 1
  std::vector<double> alpha(n, 0.0);
  double remaining = 1.0;
  for (std::size_t i = 0; i < n && remaining > 0.0; ++i) {
    double a = std::min(upper, remaining);
    alpha[i] = a;
    remaining -= a;
  }

  // gradient of 1/2 a^T K a
  std::vector<double> grad(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double g = 0.0;
    for (std::size_t j = 0; j < n; ++j) g += kmat[i * n + j] * alpha[j];
    grad[i] = g;
  }

  OcsvmModel model;
  model.nu = params.nu;
  model.gamma = gamma;
  model.n_train = n;
  model.params = params;

  double violation = std::numeric_limits<double>::infinity();
  std::size_t iter = 0;
  for (; iter < params.max_iter; ++iter) {
    // most violating pair: move mass from high-gradient j (alpha_j > 0)
    // to low-gradient i (alpha_i < upper)
    std::size_t best_i = n, best_j = n;
    double min_up = std::numeric_limits<double>::infinity();
    double max_down = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] < upper && grad[t] < min_up) {
        min_up = grad[t];
        best_i = t;
      }
      if (alpha[t] > 0.0 && grad[t] > max_down) {
        max_down = grad[t];
        best_j = t;
      }
    }
    violation = max_down - min_up;
    if (best_i == n || best_j == n || violation < params.tol) break;

    std::size_t i = best_i, j = best_j;
    double denom = kmat[i * n + i] + kmat[j * n + j] - 2.0 * kmat[i * n + j];
    denom = std::max(denom, 1e-12);
    double delta = (grad[j] - grad[i]) / denom;
    delta = std::min(delta, std::min(upper - alpha[i], alpha[j]));
    if (delta <= 0.0) break;
    alpha[i] += delta;
    alpha[j] -= delta;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += delta * (kmat[t * n + i] - kmat[t * n + j]);
    }
  }
  model.iterations = iter;
  model.kkt_violation = violation;
  model.converged = violation < params.tol;

  // rho: gradient value on the free support vectors
  double free_sum = 0.0;
  std::size_t free_count = 0;
  double lower_bound = -std::numeric_limits<double>::infinity();  // max grad over alpha == upper
  double upper_bound = std::numeric_limits<double>::infinity();   // min grad over alpha == 0
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0 && alpha[t] < upper) {
      free_sum += grad[t];
      ++free_count;
    } else if (alpha[t] <= 0.0) {
      upper_bound = std::min(upper_bound, grad[t]);
    } else {
      lower_bound = std::max(lower_bound, grad[t]);
    }
  }
  if (free_count > 0) {
    model.rho = free_sum / static_cast<double>(free_count);
  } else {
    if (!std::isfinite(lower_bound)) lower_bound = upper_bound;
    if (!std::isfinite(upper_bound)) upper_bound = lower_bound;
    model.rho = 0.5 * (lower_bound + upper_bound);
  }

  // keep only support vectors
  std::vector<std::size_t> sv;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 1e-12) sv.push_back(t);
  }
  model.support_vectors.n = sv.size();
  model.support_vectors.c = x.c;
  model.support_vectors.labels = x.labels;
  model.support_vectors.values.reserve(sv.size() * x.c);
  for (std::size_t t : sv) {
    auto r = x.row(t);
    model.support_vectors.values.insert(model.support_vectors.values.end(), r.begin(), r.end());
    model.alpha.push_back(alpha[t]);
  }
  return model;
}

std::vector<double> ocsvm_decision(const OcsvmModel& model, const FeatureMatrix& q) {
  if (q.c != model.support_vectors.c) throw DataError("ocsvm_decision: feature count mismatch");
  std::vector<double> out(q.n);
  for (std::size_t i = 0; i < q.n; ++i) {
    double acc = 0.0;
    for (std::size_t s = 0; s < model.support_vectors.n; ++s) {
      acc += model.alpha[s] * rbf(q.row(i), model.support_vectors.row(s), model.gamma);
    }
    out[i] = acc - model.rho;
  }
  return out;
}

}  // namespace forte
