#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "forte/gmm.hpp"
#include "forte/kde.hpp"
#include "forte/matrix.hpp"
#include "forte/ocsvm.hpp"
#include "forte/standardizer.hpp"

namespace forte {

enum class EstimatorKind { Gmm, Kde, Ocsvm };

std::string to_string(EstimatorKind k);
EstimatorKind estimator_from_string(const std::string& name);

using DensityModel = std::variant<GmmModel, KdeModel, OcsvmModel>;

/// Per-point anomaly scores, oriented so higher = more anomalous.
struct AnomalyScores {
  std::vector<double> values;
  EstimatorKind model;
};

/// GMM/KDE: negative log density. OCSVM: negated decision value.
AnomalyScores anomaly_score(const DensityModel& model, const FeatureMatrix& q);

EstimatorKind model_kind(const DensityModel& model);

/// Versioned binary model serialization ("FRTM" magic). Round-trip
/// reproduces scores bit-for-bit. The standardizer used at fit time is
/// stored alongside the model.
void save_model(const DensityModel& model, const Standardizer& standardizer,
                const std::string& path);
std::pair<DensityModel, Standardizer> load_model(const std::string& path);

}  // namespace forte
