#include "qam/operators.hpp"

#include <cmath>
#include <string>

namespace qam {

bool DeltaPoint::in_delta_alpha(double alpha) const noexcept { return std::abs(x - z) >= alpha; }

double pales_b(const Generator& gen, const DeltaPoint& p) {
  if (std::abs(p.x - p.z) < kDegenerateSeparation) {
    throw DegeneratePointError("B_f needs x != z");
  }
  const double fx = gen.eval(p.x);
  return (fx - gen.eval(p.y)) / (fx - gen.eval(p.z));
}

namespace {

double closed_form_arrow_pratt(const Generator& gen, double x) {
  switch (gen.kind()) {
    case GeneratorKind::identity:
      return 0.0;
    case GeneratorKind::power:
      return (gen.param() - 1.0) / x;
    case GeneratorKind::log:
      return -1.0 / x;
    case GeneratorKind::exp:
      return gen.param();
    case GeneratorKind::sine: {
      const double n = gen.param();
      return -n * std::sin(n * x) / (n + std::cos(n * x));
    }
    case GeneratorKind::affine:
      // (c g + d)'' / (c g + d)' = g'' / g'
      return closed_form_arrow_pratt(*gen.inner(), x);
  }
  return 0.0;
}

}  // namespace

double arrow_pratt(const Generator& gen, double x) {
  const double d1 = gen.deriv(x, 1);
  if (std::abs(d1) < 1e-12) {
    throw VanishingDerivativeError("f'(" + std::to_string(x) + ") vanishes for " + gen.spec());
  }
  return closed_form_arrow_pratt(gen, gen.domain().clamp(x));
}

double weighted_b_sum(const Generator& gen, const WeightedSample& s, double z) {
  const double m = qa_mean(gen, s);
  if (std::abs(z - m) < kDegenerateSeparation) {
    throw DegeneratePointError("pivot z coincides with the mean");
  }
  const auto a = s.points();
  const auto w = s.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += w[i] * pales_b(gen, {m, a[i], z});
  return sum;
}

}  // namespace qam
