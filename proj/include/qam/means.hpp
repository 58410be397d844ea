#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qam/generator.hpp"

namespace qam {

/// Points a_1..a_n with positive weights normalized to sum to one.
///
/// Weights whose sum is within 1e-6 of one are divided by their sum; a larger
/// discrepancy is rejected. Empty weights mean uniform weights.
class WeightedSample {
 public:
  WeightedSample(std::vector<double> points, std::vector<double> weights = {});

  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return points_.size(); }
  double min_point() const noexcept { return min_; }
  double max_point() const noexcept { return max_; }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
  double min_;
  double max_;
};

/// Parses `a=1,3,5 w=0.2,0.3,0.5`; `w=` may be omitted.
WeightedSample parse_sample(std::string_view text);

/// Parses a comma-separated list of reals (with the `pi` suffix form).
std::vector<double> parse_real_list(std::string_view text);

/// f^{-1}(sum w_i f(a_i)), clamped to [min a, max a].
double qa_mean(const Generator& gen, const WeightedSample& s);

/// Weighted power mean (sum w_i a_i^p)^(1/p); p = 0 gives the geometric mean.
double power_mean(double p, const WeightedSample& s);

}  // namespace qam
