#include "qam/means.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qam {

namespace {
constexpr double kWeightSumTolerance = 1e-6;
}

WeightedSample::WeightedSample(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw std::invalid_argument("sample needs at least one point");
  for (double a : points_) {
    if (!std::isfinite(a)) throw std::invalid_argument("sample points must be finite");
  }
  if (weights_.empty()) weights_.assign(points_.size(), 1.0 / static_cast<double>(points_.size()));
  if (weights_.size() != points_.size()) {
    throw std::invalid_argument("sample has " + std::to_string(points_.size()) + " points but " +
                                std::to_string(weights_.size()) + " weights");
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive");
  }
  const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw std::invalid_argument("weights sum to " + std::to_string(sum) + ", expected 1");
  }
  for (double& w : weights_) w /= sum;
  auto [lo, hi] = std::minmax_element(points_.begin(), points_.end());
  min_ = *lo;
  max_ = *hi;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_real(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

WeightedSample parse_sample(std::string_view text) {
  std::vector<double> a;
  std::vector<double> w;
  bool have_a = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    auto end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view field = text.substr(pos, end - pos);
    if (field.starts_with("a=")) {
      a = parse_real_list(field.substr(2));
      have_a = true;
    } else if (field.starts_with("w=")) {
      w = parse_real_list(field.substr(2));
    } else {
      throw ParseError("unexpected sample field '" + std::string(field) + "'");
    }
    pos = end;
  }
  if (!have_a) throw ParseError("sample needs 'a=...'");
  try {
    return WeightedSample(std::move(a), std::move(w));
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

double qa_mean(const Generator& gen, const WeightedSample& s) {
  const auto a = s.points();
  const auto w = s.weights();
  for (double x : a) {
    if (!gen.domain().contains(x, 1e-12)) {
      throw RangeError("sample point " + std::to_string(x) + " outside " + to_string(gen.domain()));
    }
  }
  if (s.min_point() == s.max_point()) return s.min_point();
  double y = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) y += w[i] * gen.eval(a[i]);
  const double lo = gen.domain().clamp(s.min_point());
  const double hi = gen.domain().clamp(s.max_point());
  return std::clamp(gen.inverse(y, lo, hi), s.min_point(), s.max_point());
}

double power_mean(double p, const WeightedSample& s) {
  const auto a = s.points();
  const auto w = s.weights();
  for (double x : a) {
    if (!(x > 0.0)) throw RangeError("power mean needs positive points");
  }
  double acc = 0.0;
  if (p == 0.0) {
    for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * std::log(a[i]);
    return std::exp(acc);
  }
  for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * std::pow(a[i], p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace qam
