#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace forte {

/// Dense row-major matrix of embedding vectors. Values are stored as
/// binary32 (the interchange precision); all distance arithmetic is done
/// in double.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t n, std::size_t d);
  EmbeddingMatrix(std::size_t n, std::size_t d, std::vector<float> data);

  /// Convenience constructor for small literal fixtures.
  static EmbeddingMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return d_; }
  bool empty() const { return n_ == 0; }

  float at(std::size_t i, std::size_t j) const { return data_[i * d_ + j]; }
  float& at(std::size_t i, std::size_t j) { return data_[i * d_ + j]; }
  std::span<const float> row(std::size_t i) const { return {data_.data() + i * d_, d_}; }

  const std::vector<float>& data() const { return data_; }
  std::vector<float>& data() { return data_; }

  /// Throws DataError naming the offending cell if any value is NaN/Inf.
  void require_finite(const std::string& context) const;

  /// New matrix containing the given rows, in order.
  EmbeddingMatrix select_rows(std::span<const std::size_t> indices) const;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<float> data_;
};

/// Deterministic three-way partition of a matrix's rows.
struct SplitTriple {
  EmbeddingMatrix held_out;
  EmbeddingMatrix reference;
  EmbeddingMatrix test_like;
  std::uint64_t seed = 0;
};

/// Shuffles rows under the seed, then assigns contiguous thirds.
/// Remainder rows go to held_out first, then reference.
SplitTriple three_way_split(const EmbeddingMatrix& m, std::uint64_t seed);

/// Row permutation used by three_way_split, exposed so multiple
/// representation spaces can share one shuffle.
std::vector<std::size_t> split_permutation(std::size_t n, std::uint64_t seed);
SplitTriple three_way_split_with(const EmbeddingMatrix& m,
                                 std::span<const std::size_t> permutation,
                                 std::uint64_t seed);

/// Labeled real-valued feature matrix (PRDC features, model inputs).
struct FeatureMatrix {
  std::size_t n = 0;
  std::size_t c = 0;
  std::vector<double> values;  // row-major
  std::vector<std::string> labels;

  double at(std::size_t i, std::size_t j) const { return values[i * c + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * c + j]; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * c, c}; }
};

}  // namespace forte
