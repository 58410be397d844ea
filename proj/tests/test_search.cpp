#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qam/search.hpp"

using namespace qam;

namespace {
const Interval kTwoPi(0.0, 2.0 * std::numbers::pi);
}

TEST_CASE("rho_lower_bound examples") {
  const Interval u(0.5, 8);
  for (const auto& g : standard_catalog(u)) {
    CAPTURE(g.spec());
    CHECK(rho_lower_bound(g, g, u).value == 0.0);
    // The offset is lost to rounding where |f'| is small, e.g. exp:-1 near 8.
    CHECK(rho_lower_bound(g, Generator::affine(-2, 3, g), u).value <= 1e-10);
  }

  const Interval e2(1, std::exp(2.0));
  const Generator id = Generator::identity(e2);
  const Generator lg = Generator::log(e2);
  const SearchConfig two{.point_counts = {2}};
  const RhoEstimate est = rho_lower_bound(id, lg, e2, two);
  const double ref = oracle::rho_grid_two_points(id, lg, e2.lo(), e2.hi(), 101);
  CHECK(est.value >= 0.99 * ref);
  CHECK(est.value <= 1.01 * ref);
  CHECK(est.witness_points.size() == 2);
  CHECK(est.evaluations > 0);

  CHECK_THROWS_AS(rho_lower_bound(Generator::identity(Interval(0, 1)), id, e2),
                  std::invalid_argument);
}

TEST_CASE("invalid configurations return zero") {
  const Interval u(1, 2);
  const Generator id = Generator::identity(u);
  const Generator sq = Generator::power(2, u);
  for (const SearchConfig& cfg :
       {SearchConfig{.point_counts = {}}, SearchConfig{.point_counts = {1}},
        SearchConfig{.point_counts = {9}}, SearchConfig{.grid_per_axis = 1},
        SearchConfig{.refine_rounds = -1}, SearchConfig{.random_restarts = -2}}) {
    const RhoEstimate r = rho_lower_bound(id, sq, u, cfg);
    CHECK(r.value == 0.0);
    CHECK(r.witness_points.size() == 1);
  }
}

TEST_CASE("property: witness, symmetry and determinism") {
  const Interval u(1, 3);
  const auto catalog = standard_catalog(u);
  for (std::size_t i = 0; i + 3 < catalog.size(); i += 2) {
    const Generator& f = catalog[i];
    const Generator& g = catalog[i + 3];
    CAPTURE(f.spec());
    CAPTURE(g.spec());
    const RhoEstimate fg = rho_lower_bound(f, g, u);
    REQUIRE(std::abs(recompute(f, g, fg) - fg.value) <= 1e-14);
    REQUIRE(fg.value >= 0.0);
    REQUIRE(fg.value <= u.length());
    REQUIRE(rho_lower_bound(g, f, u).value == fg.value);
    const RhoEstimate again = rho_lower_bound(f, g, u);
    REQUIRE(again.value == fg.value);
    REQUIRE(again.witness_points == fg.witness_points);
    REQUIRE(again.witness_weights == fg.witness_weights);
  }
}

TEST_CASE("property: a larger nested budget never lowers the estimate") {
  const Interval u(1, 3);
  const auto catalog = standard_catalog(u);
  for (std::size_t i = 0; i + 5 < catalog.size(); i += 3) {
    const Generator& f = catalog[i];
    const Generator& g = catalog[i + 5];
    CAPTURE(f.spec());
    CAPTURE(g.spec());
    const SearchConfig small{.point_counts = {2}, .grid_per_axis = 17, .refine_rounds = 1};
    SearchConfig finer = small;
    finer.grid_per_axis = 33;
    SearchConfig longer = small;
    longer.refine_rounds = 3;
    const double base = rho_lower_bound(f, g, u, small).value;
    REQUIRE(rho_lower_bound(f, g, u, finer).value >= base);
    REQUIRE(rho_lower_bound(f, g, u, longer).value >= base);
  }
}

TEST_CASE("convergence diagnostic examples") {
  const Generator id = Generator::identity(kTwoPi);
  std::vector<Generator> sines;
  for (int n = 2; n <= 10; ++n) sines.push_back(Generator::sine(n, kTwoPi));
  const ConvergenceReport rep = convergence_diagnostic(sines, id, kTwoPi, 32);
  REQUIRE(rep.rows.size() == sines.size());
  CHECK(rep.limit == "identity");
  CHECK(rep.grid == 32);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const double n = 2.0 + static_cast<double>(i);
    CHECK(rep.rows[i].generator == sines[i].spec());
    CHECK(rep.rows[i].rho.value <= 2.0 / (n * n) + 1e-9);
  }

  const Interval u(1, 2);
  const Generator lin = Generator::identity(u);
  std::vector<Generator> powers;
  for (int n = 1; n <= 8; ++n) powers.push_back(Generator::power(1.0 + 1.0 / n, u));
  const ConvergenceReport pw = convergence_diagnostic(powers, lin, u, 32);
  for (std::size_t i = 1; i < pw.rows.size(); ++i) {
    CHECK(pw.rows[i].b_deviation <= 1.1 * pw.rows[i - 1].b_deviation);
  }
  CHECK(pw.rows.back().b_deviation < 0.2 * pw.rows.front().b_deviation);

  const std::vector<Generator> same(3, lin);
  for (const auto& row : convergence_diagnostic(same, lin, u, 16).rows) {
    CHECK(row.b_deviation == 0.0);
    CHECK(row.rho.value == 0.0);
  }
  CHECK_THROWS_AS(convergence_diagnostic(same, Generator::identity(Interval(1, 1.5)), u, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(convergence_diagnostic(same, lin, u, 1), std::invalid_argument);
}
