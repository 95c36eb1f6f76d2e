#pragma once

#include <stdexcept>

namespace xorlab {

// Invalid arguments are reported with std::invalid_argument.

/// Input is too short or a join is empty.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive search was asked to exceed its configured size.
class SizeExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Pearson correlation with a zero-variance column.
class UndefinedCorrelation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace xorlab
