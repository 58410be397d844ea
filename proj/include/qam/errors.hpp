#pragma once

#include <stdexcept>
#include <string>

namespace qam {

/// A point or value fell outside the interval where it is defined.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// A DeltaPoint with x == z, or a pivot z equal to the mean.
class DegeneratePointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// f'(x) vanished where a ratio by f' was requested.
class VanishingDerivativeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A pointwise function returned NaN or infinity during a norm computation.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed generator, interval or sample text.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qam
