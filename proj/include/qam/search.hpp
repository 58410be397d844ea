#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qam/generator.hpp"

namespace qam {

/// Empirical lower bound on rho(M_f, M_g), with the sample that attains it.
struct RhoEstimate {
  double value = 0.0;
  std::vector<double> witness_points;
  std::vector<double> witness_weights;
  std::size_t evaluations = 0;
};

struct SearchConfig {
  /// Sample sizes n to search; each must lie in [2, 8].
  std::vector<int> point_counts{2, 3};
  /// Grid nodes per axis for n = 2; larger n use a coarser grid of similar total size.
  int grid_per_axis = 33;
  /// Coordinate-descent rounds applied to every incumbent.
  int refine_rounds = 3;
  /// Seed of the random-restart phase.
  std::uint64_t seed = 20131027;
  /// Random starting samples per sample size.
  int random_restarts = 8;
};

/// Worst-case search for |M_f(a,w) - M_g(a,w)| over samples in U.
///
/// Phase 1 scans sorted point tuples on a uniform grid against a barycentric
/// weight grid; phase 2 runs step-halving coordinate ascent from the five best
/// grid samples and from seeded random samples. Deterministic for a fixed
/// config. An invalid config yields value 0 with a one-point witness.
RhoEstimate rho_lower_bound(const Generator& f, const Generator& g, const Interval& u,
                            const SearchConfig& cfg = {});

/// |M_f - M_g| at the witness, recomputed from scratch.
double recompute(const Generator& f, const Generator& g, const RhoEstimate& est);

struct ConvergenceRow {
  std::string generator;
  /// max |B_{f_n} - B_f| over grid points with |x - z| >= |U| / grid.
  double b_deviation = 0.0;
  RhoEstimate rho;
};

struct ConvergenceReport {
  std::string limit;
  double lo = 0.0;
  double hi = 0.0;
  int grid = 0;
  std::vector<ConvergenceRow> rows;
};

/// Samples how far each member of a generator sequence is from the limit f,
/// both through the Pales operator and through a small rho search. Purely
/// diagnostic. Throws std::invalid_argument if any domain does not contain U.
ConvergenceReport convergence_diagnostic(std::span<const Generator> seq, const Generator& f,
                                         const Interval& u, int grid);

}  // namespace qam
