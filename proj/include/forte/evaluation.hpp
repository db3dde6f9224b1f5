#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace forte {

struct SeedResult {
  std::uint64_t seed = 0;
  double auroc = 0.0;
  double fpr95 = 0.0;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample std (n-1), 0 when n == 1
};

struct EvaluationReport {
  std::string estimator;
  std::size_t k = 0;
  std::string radius_source;
  std::string normalization;
  std::vector<SeedResult> per_seed;
  MeanStd auroc;
  MeanStd fpr95;
  std::size_t n_id = 0;
  std::size_t n_ood = 0;
  std::vector<std::string> spaces;
};

/// Probability a random OOD score exceeds a random ID score, ties 1/2
/// (Mann-Whitney statistic over n_id * n_ood pairs), via midranks.
double auroc(const std::vector<double>& scores_id, const std::vector<double>& scores_ood);

/// FPR at the largest threshold t with TPR(t) >= target under the rule
/// "positive iff score >= t". OOD is the positive class.
double fpr_at_tpr(const std::vector<double>& scores_id, const std::vector<double>& scores_ood,
                  double target_tpr = 0.95);

MeanStd mean_std(const std::vector<double>& values);

/// Fills the aggregate fields from per_seed entries.
EvaluationReport aggregate_seeds(std::vector<SeedResult> runs);

/// Report JSON (stable key order, byte-reproducible for fixed inputs).
std::string report_to_json(const EvaluationReport& r);

/// "97.63 ± 0.15" style summary with two decimals, percent scale.
std::string summary_line(const EvaluationReport& r);

}  // namespace forte
