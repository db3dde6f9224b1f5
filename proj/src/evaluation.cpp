#include "forte/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "forte/errors.hpp"

namespace forte {

namespace {

void check_scores(const std::vector<double>& id, const std::vector<double>& ood) {
  if (id.empty() || ood.empty()) throw DataError("score sets must be nonempty");
  for (double v : id)
    if (!std::isfinite(v)) throw NumericError("non-finite ID score");
  for (double v : ood)
    if (!std::isfinite(v)) throw NumericError("non-finite OOD score");
}

}  // namespace

double auroc(const std::vector<double>& scores_id, const std::vector<double>& scores_ood) {
  check_scores(scores_id, scores_ood);
  // midrank formulation of the Mann-Whitney statistic
  struct Entry {
    double score;
    bool ood;
  };
  std::vector<Entry> all;
  all.reserve(scores_id.size() + scores_ood.size());
  for (double v : scores_id) all.push_back({v, false});
  for (double v : scores_ood) all.push_back({v, true});
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return a.score < b.score; });
  double rank_sum_ood = 0.0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j < all.size() && all[j].score == all[i].score) ++j;
    double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (std::size_t t = i; t < j; ++t) {
      if (all[t].ood) rank_sum_ood += midrank;
    }
    i = j;
  }
  double n_o = static_cast<double>(scores_ood.size());
  double n_i = static_cast<double>(scores_id.size());
  double u = rank_sum_ood - n_o * (n_o + 1.0) / 2.0;
  return u / (n_i * n_o);
}

double fpr_at_tpr(const std::vector<double>& scores_id, const std::vector<double>& scores_ood,
                  double target_tpr) {
  check_scores(scores_id, scores_ood);
  std::vector<double> ood = scores_ood;
  std::sort(ood.begin(), ood.end(), std::greater<>());
  // smallest positive count reaching the target TPR; the threshold is that
  // OOD score (TPR steps at multiples of 1/n_ood)
  std::size_t need = static_cast<std::size_t>(
      std::ceil(target_tpr * static_cast<double>(ood.size()) - 1e-12));
  need = std::max<std::size_t>(need, 1);
  double threshold = ood[need - 1];
  std::size_t fp = 0;
  for (double v : scores_id) {
    if (v >= threshold) ++fp;
  }
  return static_cast<double>(fp) / static_cast<double>(scores_id.size());
}

MeanStd mean_std(const std::vector<double>& values) {
  if (values.empty()) throw DataError("mean_std: empty input");
  MeanStd ms;
  for (double v : values) ms.mean += v;
  ms.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double acc = 0.0;
    for (double v : values) acc += (v - ms.mean) * (v - ms.mean);
    ms.std = std::sqrt(acc / static_cast<double>(values.size() - 1));
  }
  return ms;
}

EvaluationReport aggregate_seeds(std::vector<SeedResult> runs) {
  if (runs.empty()) throw DataError("aggregate_seeds: no runs");
  EvaluationReport r;
  std::vector<double> aurocs, fprs;
  for (const auto& run : runs) {
    aurocs.push_back(run.auroc);
    fprs.push_back(run.fpr95);
  }
  r.auroc = mean_std(aurocs);
  r.fpr95 = mean_std(fprs);
  r.per_seed = std::move(runs);
  return r;
}

std::string report_to_json(const EvaluationReport& r) {
  nlohmann::ordered_json j;
  j["estimator"] = r.estimator;
  j["k"] = r.k;
  j["radius_source"] = r.radius_source;
  j["normalization"] = r.normalization;
  nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
  nlohmann::ordered_json auroc_per = nlohmann::ordered_json::array();
  nlohmann::ordered_json fpr_per = nlohmann::ordered_json::array();
  for (const auto& s : r.per_seed) {
    seeds.push_back(s.seed);
    auroc_per.push_back(s.auroc);
    fpr_per.push_back(s.fpr95);
  }
  j["seeds"] = seeds;
  j["auroc"] = {{"mean", r.auroc.mean}, {"std", r.auroc.std}, {"per_seed", auroc_per}};
  j["fpr95"] = {{"mean", r.fpr95.mean}, {"std", r.fpr95.std}, {"per_seed", fpr_per}};
  j["n_id"] = r.n_id;
  j["n_ood"] = r.n_ood;
  j["spaces"] = r.spaces;
  return j.dump(2) + "\n";
}

std::string summary_line(const EvaluationReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "AUROC %.2f ± %.2f / FPR95 %.2f ± %.2f",
                100.0 * r.auroc.mean, 100.0 * r.auroc.std, 100.0 * r.fpr95.mean,
                100.0 * r.fpr95.std);
  return buf;
}

}  // namespace forte
