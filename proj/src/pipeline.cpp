#include "forte/pipeline.hpp"

#include <string>

#include "forte/errors.hpp"
#include "forte/gmm.hpp"
#include "forte/kde.hpp"
#include "forte/ocsvm.hpp"
#include "forte/standardizer.hpp"

namespace forte {

namespace {

void validate_spaces(const PipelineConfig& cfg) {
  if (cfg.id_spaces.empty()) throw DataError("pipeline: no representation spaces");
  if (cfg.id_spaces.size() != cfg.ood_spaces.size()) {
    throw DataError("pipeline: ID and OOD space counts differ");
  }
  if (!cfg.space_labels.empty() && cfg.space_labels.size() != cfg.id_spaces.size()) {
    throw DataError("pipeline: space label count mismatch");
  }
  if (cfg.seeds.empty()) throw DataError("pipeline: no seeds");
  std::size_t n_id = cfg.id_spaces.front().rows();
  std::size_t n_ood = cfg.ood_spaces.front().rows();
  for (std::size_t s = 0; s < cfg.id_spaces.size(); ++s) {
    if (cfg.id_spaces[s].rows() != n_id) {
      throw DataError("pipeline: ID spaces disagree on row count");
    }
    if (cfg.ood_spaces[s].rows() != n_ood) {
      throw DataError("pipeline: OOD spaces disagree on row count");
    }
    if (cfg.id_spaces[s].cols() != cfg.ood_spaces[s].cols()) {
      throw DataError("pipeline: ID/OOD dimension mismatch in space " + std::to_string(s));
    }
    cfg.id_spaces[s].require_finite("ID space " + std::to_string(s));
    cfg.ood_spaces[s].require_finite("OOD space " + std::to_string(s));
  }
  if (n_ood == 0) throw DataError("pipeline: empty OOD set");
  // after the three-way split, every third must support k-NN with self-exclusion
  std::size_t third = n_id / 3;
  if (third < cfg.prdc.k + 1) {
    throw DataError("pipeline: too few ID rows for k=" + std::to_string(cfg.prdc.k) +
                    " after the three-way split");
  }
}

DensityModel fit_estimator(const EstimatorConfig& est, const FeatureMatrix& train,
                           std::uint64_t seed, bool strict) {
  switch (est.kind) {
    case EstimatorKind::Gmm: {
      GmmModel g = gmm_fit(train, est.gmm, seed);
      if (strict && !g.converged) throw NumericError("gmm did not converge");
      return g;
    }
    case EstimatorKind::Kde:
      return kde_fit(train, est.kde);
    case EstimatorKind::Ocsvm: {
      OcsvmModel o = ocsvm_fit(train, est.ocsvm);
      if (strict && !o.converged) throw NumericError("ocsvm did not converge");
      return o;
    }
  }
  throw DataError("unknown estimator kind");
}

}  // namespace

EvaluationReport run_forte(const PipelineConfig& cfg, std::vector<ScoreDump>* dumps) {
  validate_spaces(cfg);
  const std::size_t n_spaces = cfg.id_spaces.size();
  std::vector<std::string> labels = cfg.space_labels;
  if (labels.empty()) {
    for (std::size_t s = 0; s < n_spaces; ++s) labels.push_back("space" + std::to_string(s));
  }

  std::vector<SeedResult> runs;
  std::size_t n_id_scored = 0;
  for (std::uint64_t seed : cfg.seeds) {
    auto perm = split_permutation(cfg.id_spaces.front().rows(), seed);
    std::vector<EmbeddingMatrix> held_out, reference, test_like;
    for (const auto& space : cfg.id_spaces) {
      SplitTriple t = three_way_split_with(space, perm, seed);
      held_out.push_back(std::move(t.held_out));
      reference.push_back(std::move(t.reference));
      test_like.push_back(std::move(t.test_like));
    }

    FeatureMatrix train = assemble_features(test_like, reference, cfg.prdc, labels);
    Standardizer std_fit = standardize_fit(train);
    DensityModel model =
        fit_estimator(cfg.estimator, standardize_apply(std_fit, train), seed, cfg.strict);

    FeatureMatrix id_feat = assemble_features(held_out, reference, cfg.prdc, labels);
    FeatureMatrix ood_feat = assemble_features(cfg.ood_spaces, reference, cfg.prdc, labels);
    AnomalyScores id_scores = anomaly_score(model, standardize_apply(std_fit, id_feat));
    AnomalyScores ood_scores = anomaly_score(model, standardize_apply(std_fit, ood_feat));
    n_id_scored = id_scores.values.size();

    SeedResult run;
    run.seed = seed;
    run.auroc = auroc(id_scores.values, ood_scores.values);
    run.fpr95 = fpr_at_tpr(id_scores.values, ood_scores.values);
    runs.push_back(run);

    if (dumps) {
      dumps->push_back({seed, std::move(id_scores.values), std::move(ood_scores.values)});
    }
  }

  EvaluationReport report = aggregate_seeds(std::move(runs));
  report.estimator = to_string(cfg.estimator.kind);
  report.k = cfg.prdc.k;
  report.radius_source = to_string(cfg.prdc.radius_source);
  report.normalization = to_string(cfg.prdc.density_normalization);
  report.n_id = n_id_scored;
  report.n_ood = cfg.ood_spaces.front().rows();
  report.spaces = labels;
  return report;
}

std::vector<EvaluationReport> run_forte_sweep(const PipelineConfig& cfg,
                                              const std::vector<std::size_t>& k_values,
                                              const std::vector<EstimatorKind>& estimators) {
  if (k_values.empty() || estimators.empty()) {
    throw DataError("sweep: need at least one k and one estimator");
  }
  std::vector<EvaluationReport> out;
  PipelineConfig local = cfg;
  for (std::size_t k : k_values) {
    local.prdc.k = k;
    for (EstimatorKind kind : estimators) {
      local.estimator.kind = kind;
      out.push_back(run_forte(local));
    }
  }
  return out;
}

}  // namespace forte
