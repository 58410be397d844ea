#include "qam/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "qam/errors.hpp"

namespace qam {

std::string_view to_string(BoundName name) {
  switch (name) {
    case BoundName::cargo_shisha:
      return "CARGO_SHISHA";
    case BoundName::l1_sinh:
      return "L1_SINH";
    case BoundName::osc:
      return "OSC";
    case BoundName::pales_alpha:
      return "PALES_ALPHA";
  }
  return "CARGO_SHISHA";
}

BoundName parse_bound_name(std::string_view text) {
  for (BoundName n :
       {BoundName::cargo_shisha, BoundName::l1_sinh, BoundName::osc, BoundName::pales_alpha}) {
    if (to_string(n) == text) return n;
  }
  throw ParseError("unknown bound name '" + std::string(text) + "'");
}

namespace {

constexpr double kMinDerivative = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Result of a bound formula for one argument ordering.
struct Ordered {
  bool ok = false;
  double raw = kInf;
  std::vector<NamedEstimate> details;
};

std::optional<NormEstimate> derivative_floor(const Generator& gen, const Interval& u) {
  try {
    NormEstimate e = inf_abs_deriv(gen, u);
    if (e.value > kMinDerivative) return e;
  } catch (const EvaluationError&) {
  } catch (const RangeError&) {
  }
  return std::nullopt;
}

Ordered cargo_shisha_ordered(const Generator& f, const Generator& g, const Interval& u) {
  Ordered o;
  const auto inf_f = derivative_floor(f, u);
  if (!inf_f) return o;
  const NormEstimate sup = sup_norm(difference_fn(f, g), u);
  o.ok = true;
  o.raw = 2.0 * sup.value / inf_f->value;
  o.details = {{"sup|" + f.spec() + " - " + g.spec() + "|", sup},
               {"inf|" + f.spec() + "'|", *inf_f}};
  return o;
}

/// Shared hypothesis check for the A-operator bounds: nonvanishing f', g'.
bool smooth_pair(const Generator& f, const Generator& g, const Interval& u) {
  return derivative_floor(f, u) && derivative_floor(g, u);
}

Ordered l1_ordered(const Generator& f, const Generator& g, const Interval& u) {
  Ordered o;
  if (!smooth_pair(f, g, u)) return o;
  try {
    const NormEstimate af = l1_norm(arrow_pratt_fn(f), u);
    const NormEstimate dgf = l1_norm(arrow_pratt_diff_fn(g, f), u);
    o.ok = true;
    o.raw = u.length() * std::exp(2.0 * af.value) * std::sinh(2.0 * dgf.value);
    if (std::isnan(o.raw)) o.raw = kInf;
    o.details = {{"L1(A_" + f.spec() + ")", af},
                 {"L1(A_" + g.spec() + " - A_" + f.spec() + ")", dgf}};
  } catch (const EvaluationError&) {
    o = {};
  } catch (const VanishingDerivativeError&) {
    o = {};
  }
  return o;
}

Ordered osc_ordered(const Generator& f, const Generator& g, const Interval& u) {
  Ordered o;
  if (!smooth_pair(f, g, u)) return o;
  try {
    const NormEstimate af = osc_norm(arrow_pratt_fn(f), u);
    const NormEstimate dfg = osc_norm(arrow_pratt_diff_fn(f, g), u);
    o.ok = true;
    o.raw = u.length() * std::exp(af.value) * std::expm1(dfg.value);
    if (std::isnan(o.raw)) o.raw = kInf;
    o.details = {{"OSC(A_" + f.spec() + ")", af},
                 {"OSC(A_" + f.spec() + " - A_" + g.spec() + ")", dfg}};
  } catch (const EvaluationError&) {
    o = {};
  } catch (const VanishingDerivativeError&) {
    o = {};
  }
  return o;
}

BoundReport finish(BoundName name, const Interval& u, Ordered fg, std::optional<Ordered> gf) {
  BoundReport r;
  r.name = name;
  r.symmetrized = gf.has_value();
  Ordered chosen = std::move(fg);
  if (gf && gf->ok && (!chosen.ok || gf->raw < chosen.raw)) chosen = std::move(*gf);
  r.hypotheses_ok = chosen.ok;
  r.details = std::move(chosen.details);
  if (!r.hypotheses_ok) {
    r.raw_value = kInf;
    r.value = u.length();
    r.capped = true;
    return r;
  }
  r.raw_value = chosen.raw;
  r.capped = !(chosen.raw <= u.length());
  r.value = r.capped ? u.length() : std::max(0.0, chosen.raw);
  return r;
}

template <class Fn>
BoundReport symmetric_bound(BoundName name, const Generator& f, const Generator& g,
                            const Interval& u, const BoundOptions& opts, Fn ordered) {
  if (!f.domain().contains(u) || !g.domain().contains(u)) {
    throw std::invalid_argument("generator domains must contain the working interval");
  }
  Ordered fg = ordered(f, g, u);
  std::optional<Ordered> gf;
  if (opts.symmetrize) gf = ordered(g, f, u);
  return finish(name, u, std::move(fg), std::move(gf));
}

}  // namespace

BoundReport bound_cargo_shisha(const Generator& f, const Generator& g, const Interval& u,
                               const BoundOptions& opts) {
  return symmetric_bound(BoundName::cargo_shisha, f, g, u, opts, cargo_shisha_ordered);
}

BoundReport bound_l1(const Generator& f, const Generator& g, const Interval& u,
                     const BoundOptions& opts) {
  return symmetric_bound(BoundName::l1_sinh, f, g, u, opts, l1_ordered);
}

BoundReport bound_osc(const Generator& f, const Generator& g, const Interval& u,
                      const BoundOptions& opts) {
  return symmetric_bound(BoundName::osc, f, g, u, opts, osc_ordered);
}

double inflated_sup_b_diff(const Generator& f, const Generator& g, double alpha,
                           const Interval& u) {
  const NormEstimate s = sup_b_diff(f, g, alpha, u);
  return s.value + 3.0 * s.refinement_error;
}

BoundReport bound_pales(const Generator& f, const Generator& g, const Interval& u,
                        const BoundOptions& opts) {
  if (!f.domain().contains(u) || !g.domain().contains(u)) {
    throw std::invalid_argument("generator domains must contain the working interval");
  }
  const double len = u.length();
  const double tol = 1e-4 * len;
  BoundReport r;
  r.name = BoundName::pales_alpha;
  // |B_f - B_g| is symmetric in (f, g), so both orderings coincide.
  r.symmetrized = opts.symmetrize;
  r.hypotheses_ok = true;

  NormEstimate at_hi;
  try {
    at_hi = sup_b_diff(f, g, len, u);
  } catch (const EvaluationError&) {
    r.hypotheses_ok = false;
    r.value = r.raw_value = len;
    r.capped = true;
    return r;
  }
  if (at_hi.value + 3.0 * at_hi.refinement_error > 1.0) {
    r.value = r.raw_value = len;
    r.capped = true;
    r.details = {{"S(|U|)", at_hi}};
    return r;
  }

  // S(alpha) is non-increasing: keep S(lo) > 1 >= S(hi).
  double lo = 0.0;
  double hi = len;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    NormEstimate s;
    bool fits = false;
    try {
      s = sup_b_diff(f, g, mid, u);
      fits = s.value + 3.0 * s.refinement_error <= 1.0;
    } catch (const EvaluationError&) {
      fits = false;
    }
    if (fits) {
      hi = mid;
      at_hi = s;
    } else {
      lo = mid;
    }
  }
  r.value = r.raw_value = hi;
  r.details = {{"S(alpha*)", at_hi}};
  return r;
}

std::vector<BoundReport> best_bound(const Generator& f, const Generator& g, const Interval& u,
                                    const BoundOptions& opts) {
  std::vector<BoundReport> out{bound_cargo_shisha(f, g, u, opts), bound_l1(f, g, u, opts),
                               bound_osc(f, g, u, opts), bound_pales(f, g, u, opts)};
  std::stable_sort(out.begin(), out.end(),
                   [](const BoundReport& a, const BoundReport& b) { return a.value < b.value; });
  return out;
}

}  // namespace qam
