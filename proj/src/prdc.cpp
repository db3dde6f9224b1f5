#include "forte/prdc.hpp"

#include <cmath>

#include "forte/errors.hpp"
#include "forte/neighborhood.hpp"
#include "forte/parallel.hpp"

namespace forte {

namespace {

NeighborhoodProfile test_radii(const EmbeddingMatrix& test, const EmbeddingMatrix& refs,
                               std::size_t k, RadiusSource source) {
  if (source == RadiusSource::WithinTestSet) {
    if (test.rows() <= k) {
      throw DataError("test-set radii need more than k=" + std::to_string(k) +
                      " test points, got " + std::to_string(test.rows()));
    }
    return knn_radii(test, k);
  }
  return cross_knn_radii(test, refs, k);
}

}  // namespace

std::string to_string(RadiusSource s) {
  return s == RadiusSource::WithinTestSet ? "test" : "reference";
}

std::string to_string(DensityNormalization n) {
  return n == DensityNormalization::OneOverK ? "k" : "km";
}

std::vector<double> precision_pp(const EmbeddingMatrix& test, const EmbeddingMatrix& refs,
                                 std::size_t k) {
  auto radii = knn_radii(refs, k);
  auto counts = containment_counts(refs, radii, test);
  std::vector<double> out(test.rows());
  for (std::size_t j = 0; j < counts.size(); ++j) out[j] = counts[j] > 0 ? 1.0 : 0.0;
  return out;
}

std::vector<double> recall_pp(const EmbeddingMatrix& test, const EmbeddingMatrix& refs,
                              std::size_t k, RadiusSource source) {
  auto radii = test_radii(test, refs, k, source);
  auto d2 = squared_distances(test, refs);
  std::size_t m = refs.rows();
  std::vector<double> out(test.rows());
  parallel_for(0, test.rows(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      const double* dj = d2.data() + j * m;
      std::size_t count = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (dj[i] <= radii.squared_radii[j]) ++count;
      }
      out[j] = static_cast<double>(count) / static_cast<double>(m);
    }
  });
  return out;
}

std::vector<double> density_pp(const EmbeddingMatrix& test, const EmbeddingMatrix& refs,
                               std::size_t k, DensityNormalization normalization) {
  auto radii = knn_radii(refs, k);
  auto counts = containment_counts(refs, radii, test);
  double denom = normalization == DensityNormalization::OneOverK
                     ? static_cast<double>(k)
                     : static_cast<double>(k) * static_cast<double>(refs.rows());
  std::vector<double> out(test.rows());
  for (std::size_t j = 0; j < counts.size(); ++j) out[j] = static_cast<double>(counts[j]) / denom;
  return out;
}

std::vector<double> coverage_pp(const EmbeddingMatrix& test, const EmbeddingMatrix& refs,
                                std::size_t k, RadiusSource source) {
  auto radii = test_radii(test, refs, k, source);
  auto mins2 = min_squared_distances(test, refs);
  std::vector<double> out(test.rows());
  for (std::size_t j = 0; j < test.rows(); ++j) {
    // strict inequality, squared domain
    out[j] = (mins2[j] < radii.squared_radii[j]) ? 1.0 : 0.0;
  }
  return out;
}

FeatureMatrix assemble_features(const std::vector<EmbeddingMatrix>& test_spaces,
                                const std::vector<EmbeddingMatrix>& ref_spaces,
                                const PrdcConfig& cfg,
                                const std::vector<std::string>& space_labels) {
  if (test_spaces.empty() || test_spaces.size() != ref_spaces.size()) {
    throw DataError("assemble_features: test/reference space list length mismatch");
  }
  if (!space_labels.empty() && space_labels.size() != test_spaces.size()) {
    throw DataError("assemble_features: space label count mismatch");
  }
  std::size_t n = test_spaces[0].rows();
  std::size_t m = ref_spaces[0].rows();
  for (std::size_t r = 0; r < test_spaces.size(); ++r) {
    if (test_spaces[r].rows() != n) throw DataError("assemble_features: inconsistent test row counts");
    if (ref_spaces[r].rows() != m) throw DataError("assemble_features: inconsistent reference row counts");
  }

  FeatureMatrix f;
  f.n = n;
  f.c = 4 * test_spaces.size();
  f.values.assign(f.n * f.c, 0.0);
  static const char* kMetric[4] = {"precision", "recall", "density", "coverage"};
  for (std::size_t r = 0; r < test_spaces.size(); ++r) {
    std::string label = space_labels.empty() ? "space" + std::to_string(r) : space_labels[r];
    auto p = precision_pp(test_spaces[r], ref_spaces[r], cfg.k);
    auto rc = recall_pp(test_spaces[r], ref_spaces[r], cfg.k, cfg.radius_source);
    auto d = density_pp(test_spaces[r], ref_spaces[r], cfg.k, cfg.density_normalization);
    auto c = coverage_pp(test_spaces[r], ref_spaces[r], cfg.k, cfg.radius_source);
    for (int col = 0; col < 4; ++col) f.labels.push_back(label + "." + kMetric[col]);
    for (std::size_t i = 0; i < n; ++i) {
      f.at(i, 4 * r + 0) = p[i];
      f.at(i, 4 * r + 1) = rc[i];
      f.at(i, 4 * r + 2) = d[i];
      f.at(i, 4 * r + 3) = c[i];
    }
  }
  return f;
}

}  // namespace forte
