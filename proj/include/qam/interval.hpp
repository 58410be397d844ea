#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "qam/errors.hpp"

namespace qam {

/// Closed bounded interval [lo, hi] with lo < hi.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument("interval endpoints must be finite");
    }
    if (!(lo < hi)) {
      throw std::invalid_argument("interval requires lo < hi");
    }
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }

  bool contains(double x, double slack = 0.0) const noexcept {
    return x >= lo_ - slack && x <= hi_ + slack;
  }
  bool contains(const Interval& other) const noexcept {
    return other.lo_ >= lo_ && other.hi_ <= hi_;
  }
  double clamp(double x) const noexcept { return std::clamp(x, lo_, hi_); }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

/// Parses "lo,hi". Each endpoint is a number, or a multiple of pi written
/// as `pi`, `2pi`, `0.5pi`, `-pi`.
Interval parse_interval(std::string_view text);

/// Parses a single real token, accepting the `pi` suffix form.
double parse_real(std::string_view token);

std::string to_string(const Interval& u);

}  // namespace qam
