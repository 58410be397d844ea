#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qam/interval.hpp"

namespace qam {

enum class GeneratorKind { identity, power, log, exp, sine, affine };

/// A continuous strictly monotone function on a closed interval, drawn from a
/// closed catalog:
///
///   identity        f(x) = x
///   power(p)        f(x) = x^p              (p != 0)
///   log             f(x) = ln x             (lo > 0)
///   exp(c)          f(x) = e^(c x)          (c != 0)
///   sine(n)         f(x) = x + sin(n x)/n^2 (n >= 2)
///   affine(c,d,g)   f(x) = c g(x) + d       (c != 0)
///
/// Every member has closed-form first and second derivatives. Instances are
/// immutable; copies share the wrapped generator of an affine wrap.
class Generator {
 public:
  static Generator identity(Interval domain);
  static Generator power(double p, Interval domain);
  static Generator log(Interval domain);
  static Generator exp(double c, Interval domain);
  static Generator sine(double n, Interval domain);
  static Generator affine(double c, double d, Generator inner);

  GeneratorKind kind() const noexcept { return kind_; }
  const Interval& domain() const noexcept { return domain_; }
  /// First catalog parameter: p, c, n, or the affine scale c.
  double param() const noexcept { return a_; }
  /// Affine offset d; zero for other kinds.
  double offset() const noexcept { return b_; }
  /// Wrapped generator of an affine wrap; null otherwise.
  const Generator* inner() const noexcept { return inner_.get(); }

  bool increasing() const noexcept;

  /// f(x). Throws RangeError if x is outside the domain by more than 1e-12.
  double eval(double x) const;

  /// Closed-form f'(x) (order 1) or f''(x) (order 2).
  /// Throws std::invalid_argument for any other order.
  double deriv(double x, int order) const;

  /// f^{-1}(y) by bisection on the whole domain.
  double inverse(double y) const;

  /// f^{-1}(y) restricted to the bracket [lo, hi] (a subinterval of the
  /// domain). y is clamped to the bracket's image once it is within slack.
  double inverse(double y, double lo, double hi) const;

  /// Compact text form accepted by parse_generator.
  std::string spec() const;

 private:
  Generator(GeneratorKind kind, Interval domain, double a, double b,
            std::shared_ptr<const Generator> inner);

  double raw_eval(double x) const;
  double raw_deriv(double x, int order) const;

  GeneratorKind kind_;
  Interval domain_;
  double a_;
  double b_;
  std::shared_ptr<const Generator> inner_;
};

/// Central finite-difference derivative with step max(1e-6, 1e-6 |x|);
/// the stencil is shifted inward near the domain ends.
double numeric_deriv(const Generator& gen, double x, int order);

/// Parses `identity`, `power:p`, `log`, `exp:c`, `sine:n`,
/// `affine:c,d:<inner spec>` on the given domain.
Generator parse_generator(std::string_view text, Interval domain);

/// The enumerable test catalog restricted to members that are valid on U.
std::vector<Generator> standard_catalog(const Interval& u);

}  // namespace qam
