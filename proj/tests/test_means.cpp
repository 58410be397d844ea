#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qam/means.hpp"

using namespace qam;

namespace {

WeightedSample random_sample(std::mt19937_64& rng, const Interval& u, int max_n) {
  std::uniform_int_distribution<int> n_dist(1, max_n);
  std::uniform_real_distribution<double> a_dist(u.lo(), u.hi());
  std::uniform_real_distribution<double> w_dist(0.01, 1.0);
  const int n = n_dist(rng);
  std::vector<double> a(n), w(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    a[i] = a_dist(rng);
    w[i] = w_dist(rng);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return WeightedSample(a, w);
}

}  // namespace

TEST_CASE("qa_mean examples") {
  CHECK(qa_mean(Generator::identity(Interval(0, 4)), WeightedSample({1, 3}, {0.5, 0.5})) == 2.0);
  CHECK(qa_mean(Generator::log(Interval(0.5, 8)), WeightedSample({1, 4}, {0.5, 0.5})) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(qa_mean(Generator::power(2, Interval(1, 10)), WeightedSample({1, 7}, {0.5, 0.5})) ==
        doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("power_mean examples") {
  CHECK(power_mean(1, WeightedSample({2, 4}, {0.5, 0.5})) == 3.0);
  CHECK(power_mean(-1, WeightedSample({1, 3}, {0.5, 0.5})) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(power_mean(0, WeightedSample({1, 4}, {0.5, 0.5})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(power_mean(2, WeightedSample({0, 4})), RangeError);
}

TEST_CASE("sample construction") {
  CHECK_THROWS_AS(WeightedSample({}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedSample({1, 2}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedSample({1, 2}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedSample({1, 2}, {0.5, 0.6}), std::invalid_argument);
  const WeightedSample near({1, 2}, {0.5, 0.5 + 5e-7});
  CHECK(std::abs(near.weights()[0] + near.weights()[1] - 1.0) <= 1e-12);
  const WeightedSample uniform({1, 2, 3, 4});
  CHECK(uniform.weights()[2] == 0.25);

  const WeightedSample parsed = parse_sample("a=1,3,5 w=0.2,0.3,0.5");
  CHECK(parsed.size() == 3);
  CHECK(parsed.weights()[1] == doctest::Approx(0.3));
  CHECK(parse_sample("a=1,4").weights()[0] == 0.5);
  CHECK_THROWS_AS(parse_sample("w=0.5,0.5"), ParseError);
  CHECK_THROWS_AS(parse_sample("a=1,2 w=0.5"), ParseError);
  CHECK_THROWS_AS(parse_sample("a=1,x"), ParseError);
}

TEST_CASE("edge cases") {
  const Generator g = Generator::sine(3, Interval(0, 6));
  CHECK(qa_mean(g, WeightedSample({2.5})) == 2.5);
  CHECK(qa_mean(g, WeightedSample({1.7, 1.7, 1.7}, {0.2, 0.3, 0.5})) == 1.7);
  CHECK_THROWS_AS(qa_mean(g, WeightedSample({1.0, 7.0})), RangeError);
}

TEST_CASE("property: internality and affine invariance") {
  const Interval u(0.5, 8.0);
  std::mt19937_64 rng(11);
  const auto catalog = standard_catalog(u);
  for (int trial = 0; trial < 300; ++trial) {
    const WeightedSample s = random_sample(rng, u, 8);
    for (const auto& g : catalog) {
      CAPTURE(g.spec());
      const double m = qa_mean(g, s);
      REQUIRE(m >= s.min_point());
      REQUIRE(m <= s.max_point());
      for (double c : {-3.0, -1.0, 0.5, 2.0}) {
        for (double d : {-1.0, 0.0, 7.0}) {
          REQUIRE(std::abs(qa_mean(Generator::affine(c, d, g), s) - m) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("property: power generators reproduce power means") {
  const Interval u(0.5, 8.0);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const WeightedSample s = random_sample(rng, u, 8);
    for (double p : {-2.0, -1.0, 0.5, 1.0, 2.0, 3.0}) {
      CAPTURE(p);
      REQUIRE(std::abs(qa_mean(Generator::power(p, u), s) - power_mean(p, s)) <= 1e-10);
    }
    REQUIRE(std::abs(qa_mean(Generator::log(u), s) - power_mean(0, s)) <= 1e-10);
  }
}

TEST_CASE("property: increasing a point never decreases the mean") {
  const Interval u(0.5, 8.0);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> bump(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightedSample s = random_sample(rng, u, 6);
    for (const auto& g : standard_catalog(u)) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<double> a(s.points().begin(), s.points().end());
        a[i] = std::min(u.hi(), a[i] + bump(rng));
        const WeightedSample t(a, std::vector<double>(s.weights().begin(), s.weights().end()));
        REQUIRE(qa_mean(g, t) >= qa_mean(g, s) - 1e-12);
      }
    }
  }
}
