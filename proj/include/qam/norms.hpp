#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

#include "qam/generator.hpp"

namespace qam {

enum class NormKind { l1, sup, inf_deriv, osc, sup_b_diff };

std::string_view to_string(NormKind kind);
NormKind parse_norm_kind(std::string_view text);

/// A grid-refined norm value. refinement_error is the absolute change between
/// the last two refinement levels; grid_size is the final node count per axis.
struct NormEstimate {
  double value = 0.0;
  double refinement_error = 0.0;
  std::size_t grid_size = 0;
  NormKind kind = NormKind::l1;
};

using PointwiseFn = std::function<double(double)>;

/// Integral of |h| over U by composite Simpson, doubling the grid until two
/// successive values agree to 1e-8 relative (at most 2^20 intervals).
NormEstimate l1_norm(const PointwiseFn& h, const Interval& u);

/// max |h| over U: doubling grid plus a local Brent search around the argmax.
NormEstimate sup_norm(const PointwiseFn& h, const Interval& u);

/// min |f'| over U, located like sup_norm.
NormEstimate inf_abs_deriv(const Generator& gen, const Interval& u);

/// Oscillation norm sup_{a,b} |int_a^b h| = max H - min H for the running
/// antiderivative H. The extrema of H are located on a Simpson grid and then
/// refined locally.
NormEstimate osc_norm(const PointwiseFn& h, const Interval& u);

/// Estimate of sup |B_f - B_g| over {(x,y,z) in U^3 : |x - z| >= alpha}.
///
/// Each level scans an N^3 grid (N = 33, 65, 129, 257) plus the boundary
/// surface |x - z| = alpha, then refines the incumbent coordinate-wise.
/// Levels stop once the relative change drops below 1e-3. The result is a
/// lower estimate of the true supremum; refinement_error is the last change.
/// Throws std::invalid_argument unless 0 < alpha <= |U|.
NormEstimate sup_b_diff(const Generator& f, const Generator& g, double alpha,
                        const Interval& u);

/// x -> A_f(x).
PointwiseFn arrow_pratt_fn(const Generator& f);
/// x -> A_f(x) - A_g(x).
PointwiseFn arrow_pratt_diff_fn(const Generator& f, const Generator& g);
/// x -> f(x) - g(x).
PointwiseFn difference_fn(const Generator& f, const Generator& g);

}  // namespace qam
