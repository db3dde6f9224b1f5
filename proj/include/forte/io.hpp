#pragma once

#include <string>

#include "forte/matrix.hpp"

namespace forte {

/// Comma-separated values, optional single header row of non-numeric tokens,
/// '.' decimal separator. Errors name the offending row/column.
EmbeddingMatrix load_csv(const std::string& path);
void save_csv(const EmbeddingMatrix& m, const std::string& path);
void save_feature_csv(const FeatureMatrix& f, const std::string& path);

/// Binary embedding format:
///   bytes 0-3   magic "FRTE"
///   bytes 4-7   version = 1 (u32 LE)
///   bytes 8-15  n (u64 LE)
///   bytes 16-19 d (u32 LE)
///   then n*d IEEE-754 binary32 LE, row-major.
EmbeddingMatrix load_binary(const std::string& path);
void save_binary(const EmbeddingMatrix& m, const std::string& path);

/// Loads by extension: ".csv" as CSV, anything else as binary.
EmbeddingMatrix load_embeddings(const std::string& path);

}  // namespace forte
