#include "forte/matrix.hpp"

#include <cmath>
#include <numeric>

#include "forte/errors.hpp"
#include "forte/rng.hpp"

namespace forte {

EmbeddingMatrix::EmbeddingMatrix(std::size_t n, std::size_t d)
    : n_(n), d_(d), data_(n * d, 0.0f) {}

EmbeddingMatrix::EmbeddingMatrix(std::size_t n, std::size_t d, std::vector<float> data)
    : n_(n), d_(d), data_(std::move(data)) {
  if (data_.size() != n_ * d_) {
    throw DataError("embedding data size does not match n*d");
  }
}

EmbeddingMatrix EmbeddingMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  std::size_t n = rows.size();
  std::size_t d = n ? rows.begin()->size() : 0;
  EmbeddingMatrix m(n, d);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != d) throw DataError("ragged row in literal matrix");
    std::size_t j = 0;
    for (double v : r) m.at(i, j++) = static_cast<float>(v);
    ++i;
  }
  return m;
}

void EmbeddingMatrix::require_finite(const std::string& context) const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) {
      if (!std::isfinite(at(i, j))) {
        throw DataError(context + ": non-finite value at row " + std::to_string(i + 1) +
                        ", column " + std::to_string(j + 1));
      }
    }
  }
}

EmbeddingMatrix EmbeddingMatrix::select_rows(std::span<const std::size_t> indices) const {
  EmbeddingMatrix out(indices.size(), d_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto src = row(indices[i]);
    for (std::size_t j = 0; j < d_; ++j) out.at(i, j) = src[j];
  }
  return out;
}

std::vector<std::size_t> split_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  SeededRng rng(mix_seed(seed ^ 0x7370'6c69'7421ULL));  // split-specific stream
  // Fisher-Yates
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

SplitTriple three_way_split_with(const EmbeddingMatrix& m,
                                 std::span<const std::size_t> permutation,
                                 std::uint64_t seed) {
  std::size_t n = m.rows();
  if (n < 3) throw DataError("three_way_split requires at least 3 rows");
  if (permutation.size() != n) throw DataError("permutation size does not match row count");
  std::size_t base = n / 3;
  std::size_t rem = n % 3;
  std::size_t n_held = base + (rem > 0 ? 1 : 0);
  std::size_t n_ref = base + (rem > 1 ? 1 : 0);
  SplitTriple t;
  t.seed = seed;
  t.held_out = m.select_rows(permutation.subspan(0, n_held));
  t.reference = m.select_rows(permutation.subspan(n_held, n_ref));
  t.test_like = m.select_rows(permutation.subspan(n_held + n_ref));
  return t;
}

SplitTriple three_way_split(const EmbeddingMatrix& m, std::uint64_t seed) {
  auto perm = split_permutation(m.rows(), seed);
  return three_way_split_with(m, perm, seed);
}

}  // namespace forte
