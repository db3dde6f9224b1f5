#include "forte/scoring.hpp"

#include "forte/errors.hpp"

namespace forte {

std::string to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::Gmm: return "gmm";
    case EstimatorKind::Kde: return "kde";
    case EstimatorKind::Ocsvm: return "ocsvm";
  }
  return "?";
}

EstimatorKind estimator_from_string(const std::string& name) {
  if (name == "gmm") return EstimatorKind::Gmm;
  if (name == "kde") return EstimatorKind::Kde;
  if (name == "ocsvm" || name == "svm") return EstimatorKind::Ocsvm;
  throw DataError("unknown estimator: " + name);
}

EstimatorKind model_kind(const DensityModel& model) {
  if (std::holds_alternative<GmmModel>(model)) return EstimatorKind::Gmm;
  if (std::holds_alternative<KdeModel>(model)) return EstimatorKind::Kde;
  return EstimatorKind::Ocsvm;
}

AnomalyScores anomaly_score(const DensityModel& model, const FeatureMatrix& q) {
  AnomalyScores s;
  s.model = model_kind(model);
  if (const auto* gmm = std::get_if<GmmModel>(&model)) {
    s.values = gmm_log_density(*gmm, q);
    for (double& v : s.values) v = -v;
  } else if (const auto* kde = std::get_if<KdeModel>(&model)) {
    s.values = kde_log_density(*kde, q);
    for (double& v : s.values) v = -v;
  } else {
    s.values = ocsvm_decision(std::get<OcsvmModel>(model), q);
    for (double& v : s.values) v = -v;
  }
  return s;
}

}  // namespace forte
