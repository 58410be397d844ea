#include "qam/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "qam/operators.hpp"
#include "qam/parallel.hpp"

namespace qam {

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::l1:
      return "L1";
    case NormKind::sup:
      return "SUP";
    case NormKind::inf_deriv:
      return "INF_DERIV";
    case NormKind::osc:
      return "OSC";
    case NormKind::sup_b_diff:
      return "SUP_B_DIFF";
  }
  return "L1";
}

NormKind parse_norm_kind(std::string_view text) {
  for (NormKind k : {NormKind::l1, NormKind::sup, NormKind::inf_deriv, NormKind::osc,
                     NormKind::sup_b_diff}) {
    if (to_string(k) == text) return k;
  }
  throw ParseError("unknown norm kind '" + std::string(text) + "'");
}

namespace {

constexpr std::size_t kQuadStart = 128;
constexpr std::size_t kQuadCap = std::size_t{1} << 20;
constexpr std::size_t kExtremumStart = 256;
constexpr std::size_t kExtremumCap = std::size_t{1} << 16;
constexpr int kBrentBits = 40;

double checked(double v, double x) {
  if (!std::isfinite(v)) {
    throw EvaluationError("non-finite value at x = " + std::to_string(x));
  }
  return v;
}

/// Node values of h on a uniform grid that doubles in place.
class DoublingGrid {
 public:
  DoublingGrid(const PointwiseFn& h, const Interval& u, std::size_t intervals)
      : h_(h), lo_(u.lo()), len_(u.length()), n_(intervals) {
    values_.resize(n_ + 1);
    for (std::size_t i = 0; i <= n_; ++i) values_[i] = eval_node(i, n_);
  }

  void refine() {
    std::vector<double> next(2 * n_ + 1);
    for (std::size_t i = 0; i <= n_; ++i) next[2 * i] = values_[i];
    for (std::size_t i = 0; i < n_; ++i) next[2 * i + 1] = eval_node(2 * i + 1, 2 * n_);
    values_ = std::move(next);
    n_ *= 2;
  }

  std::size_t intervals() const { return n_; }
  double step() const { return len_ / static_cast<double>(n_); }
  double node(std::size_t i) const {
    return i == n_ ? lo_ + len_ : lo_ + len_ * static_cast<double>(i) / static_cast<double>(n_);
  }
  const std::vector<double>& values() const { return values_; }

 private:
  double eval_node(std::size_t i, std::size_t n) const {
    const double x =
        i == n ? lo_ + len_ : lo_ + len_ * static_cast<double>(i) / static_cast<double>(n);
    return checked(h_(x), x);
  }

  const PointwiseFn& h_;
  double lo_;
  double len_;
  std::size_t n_;
  std::vector<double> values_;
};

/// Maximizes phi on [a, b] with Brent's method; returns (argmax, max).
std::pair<double, double> brent_max(const std::function<double(double)>& phi, double a, double b) {
  if (!(b > a)) return {a, phi(a)};
  std::uintmax_t iters = 200;
  auto neg = [&](double t) { return -phi(t); };
  auto [x, v] = boost::math::tools::brent_find_minima(neg, a, b, kBrentBits, iters);
  return {x, -v};
}

/// Simpson integral of h over [a, b] (signed, either orientation) with a
/// fixed 32-interval rule; used only on short spans.
double local_simpson(const PointwiseFn& h, double a, double b) {
  if (a == b) return 0.0;
  constexpr int m = 32;
  const double step = (b - a) / m;
  double s = checked(h(a), a) + checked(h(b), b);
  for (int i = 1; i < m; ++i) {
    const double x = a + step * i;
    s += (i % 2 == 1 ? 4.0 : 2.0) * checked(h(x), x);
  }
  return s * step / 3.0;
}

/// Grid extremum of phi over U with local refinement around the best node.
NormEstimate grid_extremum(const PointwiseFn& phi, const Interval& u, bool maximize,
                           NormKind kind) {
  const double sign = maximize ? 1.0 : -1.0;
  DoublingGrid grid(phi, u, kExtremumStart);
  double prev = 0.0;
  NormEstimate out{0.0, 0.0, 0, kind};
  for (int level = 0;; ++level) {
    const auto& v = grid.values();
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (sign * v[i] > sign * v[best]) best = i;
    }
    const double a = grid.node(best == 0 ? 0 : best - 1);
    const double b = grid.node(std::min(best + 1, grid.intervals()));
    auto [xr, vr] = brent_max([&](double t) { return sign * checked(phi(t), t); }, a, b);
    const double value = std::max(sign * v[best], vr) * sign;
    out.value = value;
    out.grid_size = grid.intervals() + 1;
    if (level >= 1) {
      out.refinement_error = std::abs(value - prev);
      if (out.refinement_error <= 1e-12 * (1.0 + std::abs(value)) ||
          grid.intervals() >= kExtremumCap) {
        break;
      }
    }
    prev = value;
    grid.refine();
  }
  return out;
}

double simpson_sum(const std::vector<double>& v, double step) {
  double s = v.front() + v.back();
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
  return s * step / 3.0;
}

}  // namespace

NormEstimate l1_norm(const PointwiseFn& h, const Interval& u) {
  const PointwiseFn abs_h = [&h](double x) { return std::abs(h(x)); };
  DoublingGrid grid(abs_h, u, kQuadStart);
  double prev = simpson_sum(grid.values(), grid.step());
  NormEstimate out{prev, 0.0, grid.intervals() + 1, NormKind::l1};
  for (int level = 1; grid.intervals() < kQuadCap; ++level) {
    grid.refine();
    const double s = simpson_sum(grid.values(), grid.step());
    out = {s, std::abs(s - prev), grid.intervals() + 1, NormKind::l1};
    if (level >= 2 && out.refinement_error <= 1e-8 * s) break;
    prev = s;
  }
  return out;
}

NormEstimate sup_norm(const PointwiseFn& h, const Interval& u) {
  return grid_extremum([&h](double x) { return std::abs(h(x)); }, u, true, NormKind::sup);
}

NormEstimate inf_abs_deriv(const Generator& gen, const Interval& u) {
  return grid_extremum([&gen](double x) { return std::abs(gen.deriv(x, 1)); }, u, false,
                       NormKind::inf_deriv);
}

NormEstimate osc_norm(const PointwiseFn& h, const Interval& u) {
  DoublingGrid grid(h, u, kQuadStart);
  double prev = 0.0;
  NormEstimate out{0.0, 0.0, 0, NormKind::osc};
  for (int level = 0;; ++level) {
    const auto& v = grid.values();
    const double step = grid.step();
    // Running antiderivative at even nodes.
    const std::size_t pairs = grid.intervals() / 2;
    std::vector<double> cum(pairs + 1, 0.0);
    for (std::size_t k = 1; k <= pairs; ++k) {
      cum[k] = cum[k - 1] + step / 3.0 * (v[2 * k - 2] + 4.0 * v[2 * k - 1] + v[2 * k]);
    }
    const auto [min_it, max_it] = std::minmax_element(cum.begin(), cum.end());
    auto refine = [&](std::size_t k, double sign) {
      const double centre = grid.node(2 * k);
      const double a = grid.node(k == 0 ? 0 : 2 * k - 2);
      const double b = grid.node(std::min(2 * k + 2, grid.intervals()));
      auto [t, val] = brent_max(
          [&](double s) { return sign * (cum[k] + local_simpson(h, centre, s)); }, a, b);
      return sign * std::max(sign * cum[k], val);
    };
    const double hmax = refine(static_cast<std::size_t>(max_it - cum.begin()), 1.0);
    const double hmin = refine(static_cast<std::size_t>(min_it - cum.begin()), -1.0);
    const double value = hmax - hmin;
    out.value = value;
    out.grid_size = grid.intervals() + 1;
    if (level >= 1) {
      out.refinement_error = std::abs(value - prev);
      if ((level >= 2 && out.refinement_error <= 1e-11 * (1.0 + value)) ||
          grid.intervals() >= kQuadCap) {
        break;
      }
    }
    prev = value;
    grid.refine();
  }
  return out;
}

namespace {

struct Candidate {
  double value = -1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

class BDiff {
 public:
  BDiff(const Generator& f, const Generator& g) : f_(f), g_(g) {}

  double operator()(double x, double y, double z) const {
    const double fx = f_.eval(x);
    const double gx = g_.eval(x);
    const double v = std::abs((fx - f_.eval(y)) / (fx - f_.eval(z)) -
                              (gx - g_.eval(y)) / (gx - g_.eval(z)));
    if (!std::isfinite(v)) throw EvaluationError("non-finite |B_f - B_g|");
    return v;
  }

 private:
  const Generator& f_;
  const Generator& g_;
};

/// Scans y over the grid for a fixed (x, z) whose generator values are known.
void scan_y(double x, double fx, double gx, double z, double fz, double gz,
            const std::vector<double>& nodes, const std::vector<double>& fv,
            const std::vector<double>& gv, Candidate& best) {
  const double inv_df = 1.0 / (fx - fz);
  const double inv_dg = 1.0 / (gx - gz);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double v = std::abs((fx - fv[j]) * inv_df - (gx - gv[j]) * inv_dg);
    if (v > best.value) best = {v, x, nodes[j], z};
  }
}

Candidate refine_incumbent(const BDiff& diff, Candidate c, double alpha, const Interval& u,
                           double width) {
  auto try_coordinate = [&](double& coord, double a, double b, auto&& objective) {
    a = std::max(a, coord - width);
    b = std::min(b, coord + width);
    if (!(b > a)) return;
    auto [t, v] = brent_max(objective, a, b);
    if (v > c.value) {
      c.value = v;
      coord = t;
    }
  };
  for (int cycle = 0; cycle < 4; ++cycle) {
    try_coordinate(c.y, u.lo(), u.hi(), [&](double t) { return diff(c.x, t, c.z); });
    if (c.x >= c.z + alpha) {
      try_coordinate(c.x, c.z + alpha, u.hi(), [&](double t) { return diff(t, c.y, c.z); });
    } else {
      try_coordinate(c.x, u.lo(), c.z - alpha, [&](double t) { return diff(t, c.y, c.z); });
    }
    if (c.z >= c.x + alpha) {
      try_coordinate(c.z, c.x + alpha, u.hi(), [&](double t) { return diff(c.x, c.y, t); });
    } else {
      try_coordinate(c.z, u.lo(), c.x - alpha, [&](double t) { return diff(c.x, c.y, t); });
    }
  }
  return c;
}

}  // namespace

NormEstimate sup_b_diff(const Generator& f, const Generator& g, double alpha,
                        const Interval& u) {
  const double len = u.length();
  if (!(alpha > 0.0) || alpha > len * (1.0 + 1e-12)) {
    throw std::invalid_argument("sup_b_diff needs 0 < alpha <= |U|");
  }
  alpha = std::min(alpha, len);
  const BDiff diff(f, g);
  const double sep_floor = alpha - 1e-12 * len;

  NormEstimate out{0.0, 0.0, 0, NormKind::sup_b_diff};
  double prev = 0.0;
  for (std::size_t n = 33;; n = 2 * n - 1) {
    const double step = len / static_cast<double>(n - 1);
    std::vector<double> nodes(n), fv(n), gv(n);
    for (std::size_t i = 0; i < n; ++i) {
      nodes[i] = i + 1 == n ? u.hi() : u.lo() + step * static_cast<double>(i);
      fv[i] = f.eval(nodes[i]);
      gv[i] = g.eval(nodes[i]);
    }

    std::vector<Candidate> partial(max_chunks(n));
    parallel_chunks(n, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
      Candidate best;
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t gap = i > k ? i - k : k - i;
          if (static_cast<double>(gap) * step < sep_floor) continue;
          scan_y(nodes[i], fv[i], gv[i], nodes[k], fv[k], gv[k], nodes, fv, gv, best);
        }
        // Boundary surface z = x +- alpha.
        for (double z : {nodes[i] + alpha, nodes[i] - alpha}) {
          if (!u.contains(z)) continue;
          scan_y(nodes[i], fv[i], gv[i], z, f.eval(z), g.eval(z), nodes, fv, gv, best);
        }
      }
      partial[chunk] = best;
    });
    Candidate best;
    for (const auto& c : partial) {
      if (c.value > best.value) best = c;
    }
    if (!std::isfinite(best.value)) throw EvaluationError("non-finite |B_f - B_g| on grid");
    if (best.value > 0.0) best = refine_incumbent(diff, best, alpha, u, 2.0 * step);

    const double value = std::max(best.value, 0.0);
    out.value = value;
    out.grid_size = n;
    if (n > 33) {
      out.refinement_error = std::abs(value - prev);
      if (out.refinement_error <= 1e-3 * value + 1e-12 || n >= 257) break;
    }
    prev = value;
  }
  return out;
}

PointwiseFn arrow_pratt_fn(const Generator& f) {
  return [f](double x) { return arrow_pratt(f, x); };
}

PointwiseFn arrow_pratt_diff_fn(const Generator& f, const Generator& g) {
  return [f, g](double x) { return arrow_pratt(f, x) - arrow_pratt(g, x); };
}

PointwiseFn difference_fn(const Generator& f, const Generator& g) {
  return [f, g](double x) { return f.eval(x) - g.eval(x); };
}

}  // namespace qam
