#include "qam/generator.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace qam {

namespace {

constexpr double kDomainSlack = 1e-12;
constexpr double kInverseSlack = 1e-10;
constexpr int kInverseMaxIter = 200;

bool is_positive_integer(double p) { return p >= 1.0 && std::floor(p) == p; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

double parse_real(std::string_view token) {
  token = trim(token);
  if (token.empty()) throw ParseError("empty number");
  double scale = 1.0;
  if (token.size() >= 2 && token.substr(token.size() - 2) == "pi") {
    scale = std::numbers::pi;
    token.remove_suffix(2);
    if (!token.empty() && token.back() == '*') token.remove_suffix(1);
    if (token.empty() || token == "+") return scale;
    if (token == "-") return -scale;
  }
  if (token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("not a number: '" + std::string(token) + "'");
  }
  return v * scale;
}

Interval parse_interval(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw ParseError("interval must be 'lo,hi': '" + std::string(text) + "'");
  }
  double lo = parse_real(text.substr(0, comma));
  double hi = parse_real(text.substr(comma + 1));
  try {
    return Interval(lo, hi);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string to_string(const Interval& u) {
  return "[" + format_real(u.lo()) + "," + format_real(u.hi()) + "]";
}

Generator::Generator(GeneratorKind kind, Interval domain, double a, double b,
                     std::shared_ptr<const Generator> inner)
    : kind_(kind), domain_(domain), a_(a), b_(b), inner_(std::move(inner)) {}

Generator Generator::identity(Interval domain) {
  return Generator(GeneratorKind::identity, domain, 0.0, 0.0, nullptr);
}

Generator Generator::power(double p, Interval domain) {
  if (!std::isfinite(p) || p == 0.0) {
    throw std::invalid_argument("power generator needs a finite p != 0");
  }
  const bool odd = is_positive_integer(p) && std::fmod(p, 2.0) == 1.0;
  const bool ok = domain.lo() > 0.0 || (is_positive_integer(p) && (domain.lo() >= 0.0 || odd));
  if (!ok) {
    throw std::invalid_argument("power:" + format_real(p) + " requires a domain with lo > 0");
  }
  return Generator(GeneratorKind::power, domain, p, 0.0, nullptr);
}

Generator Generator::log(Interval domain) {
  if (!(domain.lo() > 0.0)) throw std::invalid_argument("log requires a domain with lo > 0");
  return Generator(GeneratorKind::log, domain, 0.0, 0.0, nullptr);
}

Generator Generator::exp(double c, Interval domain) {
  if (!std::isfinite(c) || c == 0.0) throw std::invalid_argument("exp generator needs c != 0");
  return Generator(GeneratorKind::exp, domain, c, 0.0, nullptr);
}

Generator Generator::sine(double n, Interval domain) {
  if (!std::isfinite(n) || n < 2.0) throw std::invalid_argument("sine generator needs n >= 2");
  return Generator(GeneratorKind::sine, domain, n, 0.0, nullptr);
}

Generator Generator::affine(double c, double d, Generator inner) {
  if (!std::isfinite(c) || !std::isfinite(d) || c == 0.0) {
    throw std::invalid_argument("affine wrap needs finite c != 0 and finite d");
  }
  Interval domain = inner.domain();
  return Generator(GeneratorKind::affine, domain, c, d,
                   std::make_shared<const Generator>(std::move(inner)));
}

bool Generator::increasing() const noexcept {
  switch (kind_) {
    case GeneratorKind::identity:
    case GeneratorKind::log:
    case GeneratorKind::sine:
      return true;
    case GeneratorKind::power:
    case GeneratorKind::exp:
      return a_ > 0.0;
    case GeneratorKind::affine:
      return (a_ > 0.0) == inner_->increasing();
  }
  return true;
}

double Generator::raw_eval(double x) const {
  switch (kind_) {
    case GeneratorKind::identity:
      return x;
    case GeneratorKind::power:
      return std::pow(x, a_);
    case GeneratorKind::log:
      return std::log(x);
    case GeneratorKind::exp:
      return std::exp(a_ * x);
    case GeneratorKind::sine:
      return x + std::sin(a_ * x) / (a_ * a_);
    case GeneratorKind::affine:
      return a_ * inner_->raw_eval(x) + b_;
  }
  return x;
}

double Generator::raw_deriv(double x, int order) const {
  const bool first = order == 1;
  switch (kind_) {
    case GeneratorKind::identity:
      return first ? 1.0 : 0.0;
    case GeneratorKind::power:
      return first ? a_ * std::pow(x, a_ - 1.0) : a_ * (a_ - 1.0) * std::pow(x, a_ - 2.0);
    case GeneratorKind::log:
      return first ? 1.0 / x : -1.0 / (x * x);
    case GeneratorKind::exp:
      return first ? a_ * std::exp(a_ * x) : a_ * a_ * std::exp(a_ * x);
    case GeneratorKind::sine:
      return first ? 1.0 + std::cos(a_ * x) / a_ : -std::sin(a_ * x);
    case GeneratorKind::affine:
      return a_ * inner_->raw_deriv(x, order);
  }
  return 0.0;
}

double Generator::eval(double x) const {
  if (!domain_.contains(x, kDomainSlack)) {
    throw RangeError("x = " + format_real(x) + " outside generator domain " + to_string(domain_));
  }
  return raw_eval(domain_.clamp(x));
}

double Generator::deriv(double x, int order) const {
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  if (!domain_.contains(x, kDomainSlack)) {
    throw RangeError("x = " + format_real(x) + " outside generator domain " + to_string(domain_));
  }
  return raw_deriv(domain_.clamp(x), order);
}

double Generator::inverse(double y) const { return inverse(y, domain_.lo(), domain_.hi()); }

double Generator::inverse(double y, double lo, double hi) const {
  if (!std::isfinite(y)) throw RangeError("inverse of a non-finite value");
  if (lo > hi) std::swap(lo, hi);
  if (lo == hi) {
    // A degenerate bracket has a single admissible preimage.
    const double f = eval(lo);
    if (std::abs(f - y) > kInverseSlack * (1.0 + std::abs(y))) {
      throw RangeError("y = " + format_real(y) + " outside generator range");
    }
    return lo;
  }
  const double flo = eval(lo);
  const double fhi = eval(hi);
  const bool inc = flo < fhi;
  const double ymin = inc ? flo : fhi;
  const double ymax = inc ? fhi : flo;
  const double slack = kInverseSlack * (1.0 + std::abs(y));
  if (y < ymin - slack || y > ymax + slack) {
    throw RangeError("y = " + format_real(y) + " outside generator range [" + format_real(ymin) +
                     "," + format_real(ymax) + "]");
  }
  if (y <= ymin) return inc ? lo : hi;
  if (y >= ymax) return inc ? hi : lo;

  // Invariant: f(a) < y < f(b) along the direction of monotonicity.
  double a = lo;
  double b = hi;
  double fa = flo;
  double fb = fhi;
  for (int it = 0; it < kInverseMaxIter; ++it) {
    const double mid = a + 0.5 * (b - a);
    if (mid <= a || mid >= b) break;
    const double fm = eval(mid);
    if (fm == y) return mid;
    if ((fm < y) == inc) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  return std::abs(fa - y) <= std::abs(fb - y) ? a : b;
}

std::string Generator::spec() const {
  switch (kind_) {
    case GeneratorKind::identity:
      return "identity";
    case GeneratorKind::power:
      return "power:" + format_real(a_);
    case GeneratorKind::log:
      return "log";
    case GeneratorKind::exp:
      return "exp:" + format_real(a_);
    case GeneratorKind::sine:
      return "sine:" + format_real(a_);
    case GeneratorKind::affine:
      return "affine:" + format_real(a_) + "," + format_real(b_) + ":" + inner_->spec();
  }
  return "identity";
}

double numeric_deriv(const Generator& gen, double x, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  const Interval& d = gen.domain();
  const double h = std::max(1e-6, 1e-6 * std::abs(x));
  // Move the stencil centre inward so that x - h and x + h stay in the domain.
  double c = x;
  if (c - h < d.lo()) c = d.lo() + h;
  if (c + h > d.hi()) c = d.hi() - h;
  const double fm = gen.eval(c - h);
  const double fp = gen.eval(c + h);
  if (order == 1) return (fp - fm) / (2.0 * h);
  const double f0 = gen.eval(c);
  return (fp - 2.0 * f0 + fm) / (h * h);
}

Generator parse_generator(std::string_view text, Interval domain) {
  text = trim(text);
  const auto colon = text.find(':');
  const std::string_view head = trim(text.substr(0, colon));
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  try {
    if (head == "identity" || head == "id") {
      if (has_arg) throw ParseError("identity takes no parameter");
      return Generator::identity(domain);
    }
    if (head == "log") {
      if (has_arg) throw ParseError("log takes no parameter");
      return Generator::log(domain);
    }
    if (head == "power") {
      if (!has_arg) throw ParseError("power needs an exponent, e.g. power:2");
      return Generator::power(parse_real(rest), domain);
    }
    if (head == "exp") {
      return Generator::exp(has_arg ? parse_real(rest) : 1.0, domain);
    }
    if (head == "sine") {
      if (!has_arg) throw ParseError("sine needs n, e.g. sine:4");
      return Generator::sine(parse_real(rest), domain);
    }
    if (head == "affine") {
      const auto inner_colon = rest.find(':');
      if (inner_colon == std::string_view::npos) {
        throw ParseError("affine needs 'affine:c,d:<inner>'");
      }
      const std::string_view coeffs = rest.substr(0, inner_colon);
      const auto comma = coeffs.find(',');
      if (comma == std::string_view::npos) throw ParseError("affine needs 'c,d' coefficients");
      const double c = parse_real(coeffs.substr(0, comma));
      const double d = parse_real(coeffs.substr(comma + 1));
      return Generator::affine(c, d, parse_generator(rest.substr(inner_colon + 1), domain));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(text) + ": " + e.what());
  }
  throw ParseError("unknown generator '" + std::string(text) + "'");
}

std::vector<Generator> standard_catalog(const Interval& u) {
  static const char* const kSpecs[] = {
      "identity", "power:-2", "power:-1", "power:0.5", "power:2",
      "power:3",  "log",      "exp:1",    "exp:-1",    "exp:0.5",
      "sine:2",   "sine:3",   "sine:5",   "affine:2,1:log",
      "affine:-3,7:power:2",  "affine:0.5,-1:sine:4",
  };
  std::vector<Generator> out;
  for (const char* spec : kSpecs) {
    try {
      out.push_back(parse_generator(spec, u));
    } catch (const ParseError&) {
      // Not valid on this interval (e.g. log with lo <= 0).
    }
  }
  return out;
}

}  // namespace qam
