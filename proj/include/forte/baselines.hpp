#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forte/evaluation.hpp"
#include "forte/matrix.hpp"
#include "forte/prdc.hpp"
#include "forte/scoring.hpp"

namespace forte {

struct TestResult {
  std::string name;
  double statistic = 0.0;
  std::optional<double> p_value;  // nullopt = undefined
  std::string notes;
};

/// Two probability mass vectors over shared bin edges.
struct HistogramPair {
  std::vector<double> edges;  // monotone, size bins+1
  std::vector<double> p;
  std::vector<double> q;
};

struct Divergences {
  std::optional<double> kl;   // undefined when P>0 on a Q=0 bin
  double js = 0.0;            // always defined, <= ln 2
  std::optional<double> bhattacharyya;  // undefined with zero overlap
};

/// Two-sided Z test on sample means. Multivariate inputs are flattened to
/// scalars by pooling all coordinates.
TestResult z_score(const std::vector<double>& a, const std::vector<double>& b);

/// Two-sample Kolmogorov-Smirnov with the asymptotic p-value at effective
/// size n_a*n_b/(n_a+n_b).
TestResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

/// U = #pairs(a_i > b_j) + ties/2, normal approximation with tie-corrected
/// variance.
TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

std::vector<double> flatten(const EmbeddingMatrix& m);

/// Mean over query points of sqrt((q-mu)^T Sigma^-1 (q-mu)), with mu/Sigma
/// from refs and Sigma diagonally loaded by 1e-6*trace/d.
double mahalanobis_mean_distance(const EmbeddingMatrix& refs, const EmbeddingMatrix& query);

Divergences histogram_divergences(const HistogramPair& h);

/// Shared equal-width histogram over the pooled range of one scalar sample
/// pair.
HistogramPair make_histogram_pair(const std::vector<double>& a, const std::vector<double>& b,
                                  std::size_t bins = 64);

/// Per-dimension divergences averaged over dimensions. KL/Bhattacharyya are
/// undefined if undefined on any dimension.
Divergences embedding_divergences(const EmbeddingMatrix& a, const EmbeddingMatrix& b,
                                  std::size_t bins = 64);

/// Mean over dimensions of the 1-D Wasserstein-1 distance between empirical
/// marginals (sorted-quantile coupling).
double wasserstein_1d_mean(const EmbeddingMatrix& a, const EmbeddingMatrix& b);

/// Classic local outlier factor of each query point relative to refs.
std::vector<double> lof_scores(const EmbeddingMatrix& refs, const EmbeddingMatrix& query,
                               std::size_t k);

/// Standard isolation-forest anomaly score 2^(-E[path]/c(subsample)),
/// deterministic given the seed.
std::vector<double> isolation_forest_scores(const EmbeddingMatrix& refs,
                                            const EmbeddingMatrix& query,
                                            std::size_t n_trees, std::size_t subsample,
                                            std::uint64_t seed);

struct RawBaselineConfig {
  EstimatorKind estimator = EstimatorKind::Gmm;
  GmmParams gmm;
  KdeParams kde;
  OcsvmParams ocsvm;
};

/// Fits the density model directly on raw reference embeddings (no PRDC
/// transform) and evaluates held-out ID vs OOD.
EvaluationReport raw_feature_baseline(const EmbeddingMatrix& refs,
                                      const EmbeddingMatrix& test_id,
                                      const EmbeddingMatrix& test_ood,
                                      const RawBaselineConfig& cfg, std::uint64_t seed);

}  // namespace forte
