#pragma once

#include <cstddef>
#include <vector>

#include "forte/matrix.hpp"

namespace forte {

/// Per-point k-th nearest-neighbor radii. Comparisons downstream are done on
/// squared distances, so both forms are kept.
struct NeighborhoodProfile {
  std::vector<double> radii;          // Euclidean
  std::vector<double> squared_radii;  // exact values the radii were derived from
  std::size_t k = 0;
};

/// Exact squared Euclidean distances, entry (i,j) = ||a_i - b_j||^2,
/// accumulated in double. Row-major n_a x n_b.
std::vector<double> squared_distances(const EmbeddingMatrix& a, const EmbeddingMatrix& b);

/// radii[i] = distance from x_i to its k-th nearest neighbor in x, excluding
/// itself. Duplicate distances occupy distinct ranks. Requires k <= n-1.
NeighborhoodProfile knn_radii(const EmbeddingMatrix& x, std::size_t k);

/// radii[i] = k-th smallest distance from query_i to the rows of base
/// (no self-exclusion). Requires k <= base.n.
NeighborhoodProfile cross_knn_radii(const EmbeddingMatrix& query,
                                    const EmbeddingMatrix& base, std::size_t k);

/// count[j] = number of centers whose closed ball (radius from the profile)
/// contains query_j.
std::vector<std::size_t> containment_counts(const EmbeddingMatrix& centers,
                                            const NeighborhoodProfile& radii,
                                            const EmbeddingMatrix& query);

/// Minimum Euclidean distance from each query row to the reference rows.
std::vector<double> min_distances(const EmbeddingMatrix& query, const EmbeddingMatrix& refs);

/// Same minimum, in the squared domain the radii comparisons use (taking a
/// root and re-squaring is not an identity at ties).
std::vector<double> min_squared_distances(const EmbeddingMatrix& query,
                                          const EmbeddingMatrix& refs);

}  // namespace forte
