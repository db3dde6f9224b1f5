#pragma once

// Shared fixtures and literal-definition oracles for the test suite. Oracles
// deliberately avoid the library's code paths (no nth_element, no shared
// distance kernels) so they can disagree with a buggy implementation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "forte/matrix.hpp"
#include "forte/rng.hpp"

namespace testutil {

inline forte::EmbeddingMatrix random_matrix(std::size_t n, std::size_t d, std::uint64_t seed,
                                            double mean = 0.0, double sigma = 1.0) {
  forte::SeededRng rng(forte::mix_seed(seed));
  forte::EmbeddingMatrix m(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m.at(i, j) = static_cast<float>(mean + sigma * rng.next_normal());
  return m;
}

inline double sqdist(const forte::EmbeddingMatrix& a, std::size_t i,
                     const forte::EmbeddingMatrix& b, std::size_t j) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double diff = static_cast<double>(a.at(i, c)) - static_cast<double>(b.at(j, c));
    acc += diff * diff;
  }
  return acc;
}

/// k-th smallest squared distance from x_i to the other rows, by full sort.
inline std::vector<double> oracle_knn_sq_radii(const forte::EmbeddingMatrix& x, std::size_t k) {
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < x.rows(); ++j) {
      if (j != i) d.push_back(sqdist(x, i, x, j));
    }
    std::sort(d.begin(), d.end());
    out[i] = d[k - 1];
  }
  return out;
}

inline std::vector<double> oracle_cross_knn_sq_radii(const forte::EmbeddingMatrix& q,
                                                     const forte::EmbeddingMatrix& base,
                                                     std::size_t k) {
  std::vector<double> out(q.rows());
  for (std::size_t i = 0; i < q.rows(); ++i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < base.rows(); ++j) d.push_back(sqdist(q, i, base, j));
    std::sort(d.begin(), d.end());
    out[i] = d[k - 1];
  }
  return out;
}

struct OraclePrdc {
  std::vector<double> precision, recall_test, recall_ref, density_counts, coverage_test,
      coverage_ref;
};

/// Literal transcription of the per-point metric definitions.
inline OraclePrdc oracle_prdc(const forte::EmbeddingMatrix& test,
                              const forte::EmbeddingMatrix& refs, std::size_t k) {
  OraclePrdc o;
  auto ref_r2 = oracle_knn_sq_radii(refs, k);
  auto test_r2 = oracle_knn_sq_radii(test, k);
  auto cross_r2 = oracle_cross_knn_sq_radii(test, refs, k);
  for (std::size_t t = 0; t < test.rows(); ++t) {
    std::size_t count = 0;
    double min_d2 = sqdist(test, t, refs, 0);
    std::size_t in_test_ball = 0, in_cross_ball = 0;
    for (std::size_t i = 0; i < refs.rows(); ++i) {
      double d2 = sqdist(test, t, refs, i);
      min_d2 = std::min(min_d2, d2);
      if (d2 <= ref_r2[i]) ++count;
      if (d2 <= test_r2[t]) ++in_test_ball;
      if (d2 <= cross_r2[t]) ++in_cross_ball;
    }
    o.precision.push_back(count > 0 ? 1.0 : 0.0);
    o.density_counts.push_back(static_cast<double>(count));
    o.recall_test.push_back(static_cast<double>(in_test_ball) / double(refs.rows()));
    o.recall_ref.push_back(static_cast<double>(in_cross_ball) / double(refs.rows()));
    o.coverage_test.push_back(min_d2 < test_r2[t] ? 1.0 : 0.0);
    o.coverage_ref.push_back(min_d2 < cross_r2[t] ? 1.0 : 0.0);
  }
  return o;
}

/// Pairwise AUROC: P(ood > id) + P(tie)/2 over all pairs.
inline double oracle_auroc(const std::vector<double>& id, const std::vector<double>& ood) {
  double wins = 0.0;
  for (double o : ood) {
    for (double i : id) {
      if (o > i) wins += 1.0;
      else if (o == i) wins += 0.5;
    }
  }
  return wins / (static_cast<double>(id.size()) * static_cast<double>(ood.size()));
}

/// Literal LOF: full-sort k-distance, tie-inclusive neighborhoods,
/// reachability-based local densities.
inline std::vector<double> oracle_lof(const forte::EmbeddingMatrix& refs,
                                      const forte::EmbeddingMatrix& query, std::size_t k) {
  const std::size_t n = refs.rows();
  std::vector<double> kdist(n);
  std::vector<std::vector<std::size_t>> neigh(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) d.push_back(std::sqrt(sqdist(refs, i, refs, j)));
    std::sort(d.begin(), d.end());
    kdist[i] = d[k - 1];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && std::sqrt(sqdist(refs, i, refs, j)) <= kdist[i]) neigh[i].push_back(j);
  }
  auto lrd = [&](const std::vector<std::size_t>& nbrs, auto dist_to) {
    double acc = 0.0;
    for (std::size_t o : nbrs) acc += std::max(kdist[o], dist_to(o));
    return acc <= 0.0 ? std::numeric_limits<double>::infinity()
                      : static_cast<double>(nbrs.size()) / acc;
  };
  std::vector<double> lrd_ref(n);
  for (std::size_t i = 0; i < n; ++i)
    lrd_ref[i] = lrd(neigh[i], [&](std::size_t o) { return std::sqrt(sqdist(refs, i, refs, o)); });

  std::vector<double> out;
  for (std::size_t q = 0; q < query.rows(); ++q) {
    std::vector<double> d;
    for (std::size_t j = 0; j < n; ++j) d.push_back(std::sqrt(sqdist(query, q, refs, j)));
    auto sorted = d;
    std::sort(sorted.begin(), sorted.end());
    double kd = sorted[k - 1];
    std::vector<std::size_t> nbrs;
    for (std::size_t j = 0; j < n; ++j)
      if (d[j] <= kd) nbrs.push_back(j);
    double lrd_q = lrd(nbrs, [&](std::size_t o) { return d[o]; });
    double mean_nbr = 0.0;
    for (std::size_t o : nbrs) mean_nbr += lrd_ref[o];
    mean_nbr /= static_cast<double>(nbrs.size());
    out.push_back(std::isinf(lrd_q) ? 1.0 : mean_nbr / lrd_q);
  }
  return out;
}

inline double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

}  // namespace testutil
