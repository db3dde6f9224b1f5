#include "forte/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "forte/errors.hpp"
#include "forte/rng.hpp"

namespace forte {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;  // ln(2*pi)

double sq(double v) { return v * v; }

/// log N(x; mu, diag(var)) for one component
double component_log_density(const GmmModel& m, std::size_t c, std::span<const double> x) {
  const double* mu = m.means.data() + c * m.n_features;
  const double* var = m.variances.data() + c * m.n_features;
  double acc = 0.0;
  for (std::size_t f = 0; f < m.n_features; ++f) {
    acc += kLog2Pi + std::log(var[f]) + sq(x[f] - mu[f]) / var[f];
  }
  return -0.5 * acc;
}

/// k-means++ seeding over the data rows.
std::vector<std::size_t> kmeanspp_centers(const FeatureMatrix& x, std::size_t n_components,
                                          SeededRng& rng) {
  std::vector<std::size_t> centers;
  centers.push_back(static_cast<std::size_t>(rng.next_below(x.n)));
  std::vector<double> d2(x.n, std::numeric_limits<double>::infinity());
  while (centers.size() < n_components) {
    std::size_t last = centers.back();
    double total = 0.0;
    for (std::size_t i = 0; i < x.n; ++i) {
      double acc = 0.0;
      for (std::size_t f = 0; f < x.c; ++f) acc += sq(x.at(i, f) - x.at(last, f));
      d2[i] = std::min(d2[i], acc);
      total += d2[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      double target = rng.next_double() * total;
      double run = 0.0;
      for (std::size_t i = 0; i < x.n; ++i) {
        run += d2[i];
        if (run >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.next_below(x.n));
    }
    centers.push_back(pick);
  }
  return centers;
}

}  // namespace

GmmModel gmm_fit(const FeatureMatrix& x, const GmmParams& params, std::uint64_t seed) {
  if (x.n == 0 || x.c == 0) throw DataError("gmm_fit: empty input");
  if (params.n_components == 0 || x.n < params.n_components) {
    throw DataError("gmm_fit: need at least n_components=" + std::to_string(params.n_components) +
                    " points, got " + std::to_string(x.n));
  }
  for (double v : x.values) {
    if (!std::isfinite(v)) throw NumericError("gmm_fit: non-finite input value");
  }

  const std::size_t n = x.n, f = x.c, cc = params.n_components;
  GmmModel m;
  m.n_components = cc;
  m.n_features = f;
  m.params = params;
  m.seed = seed;
  m.weights.assign(cc, 1.0 / static_cast<double>(cc));
  m.means.assign(cc * f, 0.0);
  m.variances.assign(cc * f, 0.0);

  // initialization: k-means++ means, global per-column variance
  SeededRng rng(mix_seed(seed ^ 0x676d'6dULL));
  auto centers = kmeanspp_centers(x, cc, rng);
  std::vector<double> col_mean(f, 0.0), col_var(f, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < f; ++j) col_mean[j] += x.at(i, j);
  for (double& v : col_mean) v /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < f; ++j) col_var[j] += sq(x.at(i, j) - col_mean[j]);
  for (double& v : col_var) v = std::max(v / static_cast<double>(n), params.reg_floor);
  for (std::size_t c = 0; c < cc; ++c) {
    for (std::size_t j = 0; j < f; ++j) {
      m.means[c * f + j] = x.at(centers[c], j);
      m.variances[c * f + j] = col_var[j];
    }
  }

  std::vector<double> resp(n * cc);
  double prev_ll = -std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
    // E step
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double* ri = resp.data() + i * cc;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < cc; ++c) {
        ri[c] = std::log(m.weights[c]) + component_log_density(m, c, x.row(i));
        best = std::max(best, ri[c]);
      }
      double sum = 0.0;
      for (std::size_t c = 0; c < cc; ++c) sum += std::exp(ri[c] - best);
      double log_norm = best + std::log(sum);
      ll += log_norm;
      for (std::size_t c = 0; c < cc; ++c) ri[c] = std::exp(ri[c] - log_norm);
    }
    ll /= static_cast<double>(n);
    m.log_likelihood_trace.push_back(ll);
    m.iterations = iter + 1;
    m.final_log_likelihood = ll;
    if (std::abs(ll - prev_ll) < params.tol) {
      m.converged = true;
      break;
    }
    prev_ll = ll;

    // M step
    for (std::size_t c = 0; c < cc; ++c) {
      double nc = 0.0;
      for (std::size_t i = 0; i < n; ++i) nc += resp[i * cc + c];
      nc = std::max(nc, 1e-300);
      double* mu = m.means.data() + c * f;
      double* var = m.variances.data() + c * f;
      std::fill(mu, mu + f, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double w = resp[i * cc + c];
        for (std::size_t j = 0; j < f; ++j) mu[j] += w * x.at(i, j);
      }
      for (std::size_t j = 0; j < f; ++j) mu[j] /= nc;
      std::fill(var, var + f, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double w = resp[i * cc + c];
        for (std::size_t j = 0; j < f; ++j) var[j] += w * sq(x.at(i, j) - mu[j]);
      }
      for (std::size_t j = 0; j < f; ++j) var[j] = std::max(var[j] / nc, params.reg_floor);
      m.weights[c] = nc / static_cast<double>(n);
    }
    // renormalize against accumulated rounding
    double wsum = 0.0;
    for (double w : m.weights) wsum += w;
    for (double& w : m.weights) w /= wsum;
  }
  return m;
}

std::vector<double> gmm_log_density(const GmmModel& model, const FeatureMatrix& q) {
  if (q.c != model.n_features) throw DataError("gmm_log_density: feature count mismatch");
  std::vector<double> out(q.n);
  std::vector<double> terms(model.n_components);
  for (std::size_t i = 0; i < q.n; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.n_components; ++c) {
      terms[c] = std::log(model.weights[c]) + component_log_density(model, c, q.row(i));
      best = std::max(best, terms[c]);
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - best);
    out[i] = best + std::log(sum);
  }
  return out;
}

}  // namespace forte
