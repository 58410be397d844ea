#pragma once

// Brute-force reference computations used only by the tests. They share no
// code with the library search paths: plain grids, no refinement, no
// threading.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "qam/generator.hpp"

namespace qam::oracle {

/// Bisection on a plain increasing function, run to bracket collapse.
inline double bisect_increasing(const std::function<double(double)>& fn, double y, double lo,
                                double hi) {
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (fn(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// max |B_f - B_g| over an n^3 uniform grid of U restricted to |x - z| >= alpha,
/// with the separation tested on node indices (so boundary nodes count).
inline double sup_b_diff_grid(const Generator& f, const Generator& g, double alpha,
                              double lo, double hi, int n) {
  const double step = (hi - lo) / (n - 1);
  std::vector<double> fv(n), gv(n);
  for (int i = 0; i < n; ++i) {
    const double x = i + 1 == n ? hi : lo + step * i;
    fv[i] = f.eval(x);
    gv[i] = g.eval(x);
  }
  const int min_gap = static_cast<int>(std::ceil(alpha / step - 1e-9));
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (std::abs(i - k) < std::max(min_gap, 1)) continue;
      for (int j = 0; j < n; ++j) {
        const double bf = (fv[i] - fv[j]) / (fv[i] - fv[k]);
        const double bg = (gv[i] - gv[j]) / (gv[i] - gv[k]);
        best = std::max(best, std::abs(bf - bg));
      }
    }
  }
  return best;
}

/// Two-point quasi-arithmetic mean computed with the oracle bisection.
inline double two_point_mean(const Generator& gen, double a1, double a2, double w1) {
  if (a1 == a2) return a1;
  const double lo = std::min(a1, a2);
  const double hi = std::max(a1, a2);
  const double y = w1 * gen.eval(a1) + (1.0 - w1) * gen.eval(a2);
  const double sign = gen.increasing() ? 1.0 : -1.0;
  return bisect_increasing([&](double x) { return sign * gen.eval(x); }, sign * y, lo, hi);
}

/// max |M_f - M_g| over a1, a2 on an n-node grid and w1 in {1/(n-1), ..., (n-2)/(n-1)}.
inline double rho_grid_two_points(const Generator& f, const Generator& g, double lo, double hi,
                                  int n) {
  const double step = (hi - lo) / (n - 1);
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const double a1 = lo + step * i;
      const double a2 = k + 1 == n ? hi : lo + step * k;
      for (int m = 1; m + 1 < n; ++m) {
        const double w = static_cast<double>(m) / (n - 1);
        best = std::max(best, std::abs(two_point_mean(f, a1, a2, w) -
                                       two_point_mean(g, a1, a2, w)));
      }
    }
  }
  return best;
}

}  // namespace qam::oracle
