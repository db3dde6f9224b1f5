#include "forte/neighborhood.hpp"

#include <algorithm>
#include <cmath>

#include "forte/errors.hpp"
#include "forte/parallel.hpp"

namespace forte {

namespace {

double row_sqdist(std::span<const float> a, std::span<const float> b) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    double diff = static_cast<double>(a[c]) - static_cast<double>(b[c]);
    acc += diff * diff;
  }
  return acc;
}

void check_dims(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
  if (a.cols() != b.cols()) {
    throw DataError("dimension mismatch: " + std::to_string(a.cols()) + " vs " +
                    std::to_string(b.cols()));
  }
}

}  // namespace

std::vector<double> squared_distances(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
  check_dims(a, b);
  std::vector<double> out(a.rows() * b.rows());
  parallel_for(0, a.rows(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      auto ra = a.row(i);
      double* dst = out.data() + i * b.rows();
      for (std::size_t j = 0; j < b.rows(); ++j) {
        dst[j] = row_sqdist(ra, b.row(j));
      }
    }
  });
  return out;
}

NeighborhoodProfile knn_radii(const EmbeddingMatrix& x, std::size_t k) {
  if (k == 0) throw DataError("k must be positive");
  if (k >= x.rows()) {
    throw DataError("knn_radii: k=" + std::to_string(k) + " requires at least k+1 points, got " +
                    std::to_string(x.rows()));
  }
  NeighborhoodProfile p;
  p.k = k;
  p.radii.resize(x.rows());
  p.squared_radii.resize(x.rows());
  parallel_for(0, x.rows(), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> d2(x.rows() - 1);
    for (std::size_t i = lo; i < hi; ++i) {
      auto ri = x.row(i);
      std::size_t out = 0;
      for (std::size_t j = 0; j < x.rows(); ++j) {
        if (j == i) continue;
        d2[out++] = row_sqdist(ri, x.row(j));
      }
      std::nth_element(d2.begin(), d2.begin() + (k - 1), d2.end());
      p.squared_radii[i] = d2[k - 1];
      p.radii[i] = std::sqrt(d2[k - 1]);
    }
  });
  return p;
}

NeighborhoodProfile cross_knn_radii(const EmbeddingMatrix& query, const EmbeddingMatrix& base,
                                    std::size_t k) {
  check_dims(query, base);
  if (k == 0) throw DataError("k must be positive");
  if (k > base.rows()) {
    throw DataError("cross_knn_radii: k=" + std::to_string(k) + " exceeds base size " +
                    std::to_string(base.rows()));
  }
  NeighborhoodProfile p;
  p.k = k;
  p.radii.resize(query.rows());
  p.squared_radii.resize(query.rows());
  parallel_for(0, query.rows(), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> d2(base.rows());
    for (std::size_t i = lo; i < hi; ++i) {
      auto ri = query.row(i);
      for (std::size_t j = 0; j < base.rows(); ++j) {
        d2[j] = row_sqdist(ri, base.row(j));
      }
      std::nth_element(d2.begin(), d2.begin() + (k - 1), d2.end());
      p.squared_radii[i] = d2[k - 1];
      p.radii[i] = std::sqrt(d2[k - 1]);
    }
  });
  return p;
}

std::vector<std::size_t> containment_counts(const EmbeddingMatrix& centers,
                                            const NeighborhoodProfile& radii,
                                            const EmbeddingMatrix& query) {
  check_dims(centers, query);
  if (radii.squared_radii.size() != centers.rows()) {
    throw DataError("containment_counts: radii/centers length mismatch");
  }
  std::vector<std::size_t> counts(query.rows(), 0);
  parallel_for(0, query.rows(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      auto rq = query.row(j);
      std::size_t c = 0;
      for (std::size_t i = 0; i < centers.rows(); ++i) {
        if (row_sqdist(rq, centers.row(i)) <= radii.squared_radii[i]) ++c;
      }
      counts[j] = c;
    }
  });
  return counts;
}

std::vector<double> min_distances(const EmbeddingMatrix& query, const EmbeddingMatrix& refs) {
  check_dims(query, refs);
  if (refs.rows() == 0) throw DataError("min_distances: empty reference set");
  std::vector<double> out(query.rows());
  parallel_for(0, query.rows(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      auto rq = query.row(j);
      double best = row_sqdist(rq, refs.row(0));
      for (std::size_t i = 1; i < refs.rows(); ++i) {
        best = std::min(best, row_sqdist(rq, refs.row(i)));
      }
      out[j] = std::sqrt(best);
    }
  });
  return out;
}

std::vector<double> min_squared_distances(const EmbeddingMatrix& query,
                                          const EmbeddingMatrix& refs) {
  check_dims(query, refs);
  if (refs.rows() == 0) throw DataError("min_squared_distances: empty reference set");
  std::vector<double> out(query.rows());
  parallel_for(0, query.rows(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      auto rq = query.row(j);
      double best = row_sqdist(rq, refs.row(0));
      for (std::size_t i = 1; i < refs.rows(); ++i) {
        best = std::min(best, row_sqdist(rq, refs.row(i)));
      }
      out[j] = best;
    }
  });
  return out;
}

}  // namespace forte
