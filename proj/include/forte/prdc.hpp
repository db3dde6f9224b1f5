#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "forte/matrix.hpp"

namespace forte {

/// Which set supplies NND_k for recall/coverage: the scored test set itself,
/// or the reference set.
enum class RadiusSource { WithinTestSet, FromReferenceSet };

/// Density scaling: 1/k (expectation ~1 on matched data) or 1/(k*m).
enum class DensityNormalization { OneOverK, OneOverKM };

struct PrdcConfig {
  std::size_t k = 5;
  RadiusSource radius_source = RadiusSource::WithinTestSet;
  DensityNormalization density_normalization = DensityNormalization::OneOverK;
};

std::string to_string(RadiusSource s);
std::string to_string(DensityNormalization n);

/// 1 iff the test point lies in the union of closed balls
/// B(ref_i, NND_k(ref_i)), radii computed within refs.
std::vector<double> precision_pp(const EmbeddingMatrix& test, const EmbeddingMatrix& refs,
                                 std::size_t k);

/// Fraction of reference points inside the closed ball around the test point,
/// radius NND_k of that test point per radius_source.
std::vector<double> recall_pp(const EmbeddingMatrix& test, const EmbeddingMatrix& refs,
                              std::size_t k, RadiusSource source);

/// Count of reference balls containing the test point, scaled per the
/// normalization.
std::vector<double> density_pp(const EmbeddingMatrix& test, const EmbeddingMatrix& refs,
                               std::size_t k, DensityNormalization normalization);

/// 1 iff min distance to refs is strictly below the test point's NND_k.
std::vector<double> coverage_pp(const EmbeddingMatrix& test, const EmbeddingMatrix& refs,
                                std::size_t k, RadiusSource source);

/// Per representation space, columns [precision, recall, density, coverage],
/// horizontally concatenated in list order. Labels are "<space>.<metric>".
FeatureMatrix assemble_features(const std::vector<EmbeddingMatrix>& test_spaces,
                                const std::vector<EmbeddingMatrix>& ref_spaces,
                                const PrdcConfig& cfg,
                                const std::vector<std::string>& space_labels = {});

}  // namespace forte
