#pragma once

#include <stdexcept>
#include <string>

namespace forte {

/// Bad input data: unreadable files, malformed values, shape mismatches.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failure: solver breakdown, degenerate covariance, non-finite results.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace forte
