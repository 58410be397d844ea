#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qam/norms.hpp"

namespace qam {

enum class BoundName { cargo_shisha, l1_sinh, osc, pales_alpha };

std::string_view to_string(BoundName name);
BoundName parse_bound_name(std::string_view text);

struct NamedEstimate {
  std::string label;
  NormEstimate estimate;
};

/// One upper bound on rho(M_f, M_g).
///
/// `raw_value` is the formula value (possibly +inf); `value` is it capped at
/// |U|, since both means lie in U. When no argument ordering satisfies the
/// hypotheses, `value` is |U| and `hypotheses_ok` is false.
struct BoundReport {
  BoundName name = BoundName::cargo_shisha;
  double value = 0.0;
  double raw_value = 0.0;
  bool hypotheses_ok = false;
  bool symmetrized = false;
  bool capped = false;
  std::vector<NamedEstimate> details;
};

struct BoundOptions {
  /// Take the min over both argument orderings.
  bool symmetrize = true;
};

/// 2 ||f - g||_inf / inf |f'|.
BoundReport bound_cargo_shisha(const Generator& f, const Generator& g, const Interval& u,
                               const BoundOptions& opts = {});

/// |U| exp(2 ||A_f||_1) sinh(2 ||A_g - A_f||_1).
BoundReport bound_l1(const Generator& f, const Generator& g, const Interval& u,
                     const BoundOptions& opts = {});

/// |U| exp(||A_f||_*) (exp(||A_f - A_g||_*) - 1).
BoundReport bound_osc(const Generator& f, const Generator& g, const Interval& u,
                      const BoundOptions& opts = {});

/// Smallest alpha in (0, |U|] whose inflated sup |B_f - B_g| over Delta_alpha
/// is at most one, located by bisection to 1e-4 |U|.
BoundReport bound_pales(const Generator& f, const Generator& g, const Interval& u,
                        const BoundOptions& opts = {});

/// sup_b_diff plus three times its refinement error.
double inflated_sup_b_diff(const Generator& f, const Generator& g, double alpha,
                           const Interval& u);

/// All four bounds sorted by value (ties keep the enumeration order).
std::vector<BoundReport> best_bound(const Generator& f, const Generator& g, const Interval& u,
                                    const BoundOptions& opts = {});

}  // namespace qam
