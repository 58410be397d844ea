#pragma once

#include "qam/generator.hpp"
#include "qam/means.hpp"

namespace qam {

/// Minimum |x - z| (and |z - M|) accepted before a point counts as degenerate.
inline constexpr double kDegenerateSeparation = 1e-12;

/// A point of the set {(x, y, z) : x != z} on which the Pales operator lives.
struct DeltaPoint {
  double x;
  double y;
  double z;

  bool in_delta_alpha(double alpha) const noexcept;
};

/// B_f(x, y, z) = (f(x) - f(y)) / (f(x) - f(z)).
double pales_b(const Generator& gen, const DeltaPoint& p);

/// A_f(x) = f''(x) / f'(x), from closed forms for the whole catalog.
double arrow_pratt(const Generator& gen, double x);

/// sum_i w_i B_f(M, a_i, z) with M the quasi-arithmetic mean; vanishes
/// identically for any admissible pivot z != M.
double weighted_b_sum(const Generator& gen, const WeightedSample& s, double z);

}  // namespace qam
