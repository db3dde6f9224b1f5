#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forte/baselines.hpp"
#include "forte/evaluation.hpp"
#include "forte/matrix.hpp"
#include "forte/prdc.hpp"
#include "forte/scoring.hpp"

namespace forte {

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::Gmm;
  GmmParams gmm;
  KdeParams kde;
  OcsvmParams ocsvm;
};

struct PipelineConfig {
  PrdcConfig prdc;
  EstimatorConfig estimator;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  // Parallel lists, one entry per representation space. All ID matrices must
  // share a row count, likewise all OOD matrices.
  std::vector<EmbeddingMatrix> id_spaces;
  std::vector<EmbeddingMatrix> ood_spaces;
  std::vector<std::string> space_labels;
  bool strict = false;  // escalate estimator non-convergence
};

/// Per-seed score dump for optional CSV output.
struct ScoreDump {
  std::uint64_t seed = 0;
  std::vector<double> id_scores;
  std::vector<double> ood_scores;
};

/// End-to-end run: per seed, split the ID data into thirds (one shared row
/// permutation across spaces), fit the estimator on PRDC features of the
/// test-like third against the reference third, score held-out ID and OOD
/// features against the same reference, evaluate AUROC/FPR@95 with OOD
/// positive, aggregate across seeds.
EvaluationReport run_forte(const PipelineConfig& cfg, std::vector<ScoreDump>* dumps = nullptr);

/// Cartesian product of k values and estimators; split permutations are
/// shared across the sweep (they depend only on seed and row count).
std::vector<EvaluationReport> run_forte_sweep(const PipelineConfig& cfg,
                                              const std::vector<std::size_t>& k_values,
                                              const std::vector<EstimatorKind>& estimators);

}  // namespace forte
