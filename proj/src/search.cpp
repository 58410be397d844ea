#include "qam/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include "qam/means.hpp"
#include "qam/parallel.hpp"

namespace qam {

namespace {

constexpr std::size_t kIncumbents = 5;
constexpr double kMinWeight = 1e-12;
constexpr double kFinestStep = 1e-10;
constexpr int kMaxSweeps = 64;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Phase-1 sample count for n points on g nodes with weight resolution g - 1.
double grid_cost(int g, int n) { return binomial(g, n) * binomial(g - 2, n - 1); }

/// Nodes per axis for sample size n, keeping the phase-1 cost near twice the
/// n = 2 cost of the configured grid.
int nodes_for(int n, int grid) {
  if (n == 2) return grid;
  const double budget = 2.0 * grid_cost(grid, 2);
  int g = n + 1;
  while (g < grid && grid_cost(g + 1, n) <= budget) ++g;
  return g;
}

/// Strictly increasing index tuples of length n drawn from [0, g).
std::vector<std::vector<int>> increasing_tuples(int g, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = n - 1;
    while (i >= 0 && idx[i] == g - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// Compositions of m into n positive parts, in lexicographic order.
std::vector<std::vector<int>> compositions(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> parts(n, 1);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      parts[pos] = left;
      out.push_back(parts);
      return;
    }
    for (int k = 1; k <= left - (n - 1 - pos); ++k) {
      parts[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  rec(rec, 0, m);
  return out;
}

class Objective {
 public:
  Objective(const Generator& f, const Generator& g) : f_(f), g_(g) {}

  double operator()(const std::vector<double>& a, const std::vector<double>& w) const {
    const WeightedSample s(a, w);
    return std::abs(qa_mean(f_, s) - qa_mean(g_, s));
  }

 private:
  const Generator& f_;
  const Generator& g_;
};

struct Scored {
  double value = -1.0;
  std::size_t ordinal = 0;
  std::vector<double> a;
  std::vector<double> w;
};

bool ranks_before(const Scored& x, const Scored& y) {
  if (x.value != y.value) return x.value > y.value;
  return x.ordinal < y.ordinal;
}

void keep_top(std::vector<Scored>& top, Scored s) {
  auto pos = std::lower_bound(top.begin(), top.end(), s, ranks_before);
  if (pos == top.end() && top.size() >= kIncumbents) return;
  top.insert(pos, std::move(s));
  if (top.size() > kIncumbents) top.pop_back();
}

/// Step-halving coordinate ascent on points and weight transfers.
std::size_t climb(const Objective& obj, const Interval& u, Scored& s, int rounds,
                  double coarse) {
  const std::size_t n = s.a.size();
  const double len = u.length();
  std::size_t evals = 0;
  auto attempt = [&](auto&& apply, auto&& undo) {
    apply();
    const double v = obj(s.a, s.w);
    ++evals;
    if (v > s.value) {
      s.value = v;
      return true;
    }
    undo();
    return false;
  };
  for (int r = 0; r < rounds; ++r) {
    for (double step = coarse; step > kFinestStep; step *= 0.5) {
      for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i) {
          for (double dir : {1.0, -1.0}) {
            const double old = s.a[i];
            const double moved = u.clamp(old + dir * step * len);
            if (moved == old) continue;
            improved |= attempt([&] { s.a[i] = moved; }, [&] { s.a[i] = old; });
          }
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
          for (double dir : {1.0, -1.0}) {
            const double wi = s.w[i];
            const double wl = s.w[n - 1];
            const double d = dir * step;
            if (wi + d <= kMinWeight || wl - d <= kMinWeight) continue;
            improved |= attempt(
                [&] {
                  s.w[i] = wi + d;
                  s.w[n - 1] = wl - d;
                },
                [&] {
                  s.w[i] = wi;
                  s.w[n - 1] = wl;
                });
          }
        }
        if (!improved) break;
      }
    }
  }
  return evals;
}

bool valid_config(const SearchConfig& cfg) {
  if (cfg.point_counts.empty() || cfg.grid_per_axis < 3 || cfg.refine_rounds < 0 ||
      cfg.random_restarts < 0) {
    return false;
  }
  return std::all_of(cfg.point_counts.begin(), cfg.point_counts.end(),
                     [](int n) { return n >= 2 && n <= 8; });
}

}  // namespace

RhoEstimate rho_lower_bound(const Generator& f, const Generator& g, const Interval& u,
                            const SearchConfig& cfg) {
  if (!f.domain().contains(u) || !g.domain().contains(u)) {
    throw std::invalid_argument("generator domains must contain the working interval");
  }
  if (!valid_config(cfg)) return RhoEstimate{0.0, {u.lo()}, {1.0}, 0};

  const Objective obj(f, g);
  Scored overall;
  std::size_t evals = 0;

  for (int n : cfg.point_counts) {
    const int nodes = nodes_for(n, cfg.grid_per_axis);
    const int resolution = nodes - 1;
    std::vector<double> grid(nodes);
    for (int i = 0; i < nodes; ++i) {
      grid[i] = i + 1 == nodes ? u.hi() : u.lo() + u.length() * i / resolution;
    }
    const auto tuples = increasing_tuples(nodes, n);
    const auto comps = compositions(resolution, n);

    // Phase 1: grid scan.
    std::vector<std::vector<Scored>> partial(max_chunks(tuples.size()));
    std::vector<std::size_t> partial_evals(partial.size(), 0);
    parallel_chunks(tuples.size(), [&](std::size_t begin, std::size_t end, std::size_t chunk) {
      std::vector<double> a(n), w(n);
      for (std::size_t t = begin; t < end; ++t) {
        for (int i = 0; i < n; ++i) a[i] = grid[tuples[t][i]];
        for (std::size_t c = 0; c < comps.size(); ++c) {
          for (int i = 0; i < n; ++i) w[i] = static_cast<double>(comps[c][i]) / resolution;
          const double v = obj(a, w);
          ++partial_evals[chunk];
          keep_top(partial[chunk], Scored{v, t * comps.size() + c, a, w});
        }
      }
    });
    std::vector<Scored> starts;
    for (auto& p : partial) {
      for (auto& s : p) keep_top(starts, std::move(s));
    }
    for (auto e : partial_evals) evals += e;

    // Phase 2: seeded random restarts join the grid incumbents.
    std::mt19937_64 rng(cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(n));
    std::uniform_real_distribution<double> point_dist(u.lo(), u.hi());
    std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
    for (int r = 0; r < cfg.random_restarts; ++r) {
      Scored s;
      s.a.resize(n);
      s.w.resize(n);
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        s.a[i] = point_dist(rng);
        s.w[i] = weight_dist(rng);
        sum += s.w[i];
      }
      for (double& w : s.w) w /= sum;
      s.value = obj(s.a, s.w);
      s.ordinal = static_cast<std::size_t>(-1);
      ++evals;
      starts.push_back(std::move(s));
    }

    for (auto& s : starts) {
      evals += climb(obj, u, s, cfg.refine_rounds, 1.0 / resolution);
      if (s.value > overall.value) overall = s;
    }
  }

  const WeightedSample witness(overall.a, overall.w);
  RhoEstimate out;
  out.value = std::abs(qa_mean(f, witness) - qa_mean(g, witness));
  out.witness_points.assign(witness.points().begin(), witness.points().end());
  out.witness_weights.assign(witness.weights().begin(), witness.weights().end());
  out.evaluations = evals + 1;
  return out;
}

double recompute(const Generator& f, const Generator& g, const RhoEstimate& est) {
  const WeightedSample s(est.witness_points, est.witness_weights);
  return std::abs(qa_mean(f, s) - qa_mean(g, s));
}

ConvergenceReport convergence_diagnostic(std::span<const Generator> seq, const Generator& f,
                                         const Interval& u, int grid) {
  if (grid < 2) throw std::invalid_argument("convergence grid needs at least 2 intervals");
  if (!f.domain().contains(u)) {
    throw std::invalid_argument("limit generator domain must contain the working interval");
  }
  for (const auto& gen : seq) {
    if (!gen.domain().contains(u)) {
      throw std::invalid_argument(gen.spec() + ": domain does not contain the working interval");
    }
  }
  ConvergenceReport report{f.spec(), u.lo(), u.hi(), grid, {}};
  std::vector<double> nodes(grid + 1);
  for (int i = 0; i <= grid; ++i) {
    nodes[i] = i == grid ? u.hi() : u.lo() + u.length() * i / grid;
  }
  std::vector<double> fv(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) fv[i] = f.eval(nodes[i]);

  SearchConfig small;
  small.point_counts = {2};
  small.grid_per_axis = 17;
  small.refine_rounds = 1;
  small.random_restarts = 2;

  for (const auto& gen : seq) {
    std::vector<double> gv(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) gv[i] = gen.eval(nodes[i]);
    double dev = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (i == k) continue;
        const double inv_f = 1.0 / (fv[i] - fv[k]);
        const double inv_g = 1.0 / (gv[i] - gv[k]);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          dev = std::max(dev, std::abs((gv[i] - gv[j]) * inv_g - (fv[i] - fv[j]) * inv_f));
        }
      }
    }
    report.rows.push_back({gen.spec(), dev, rho_lower_bound(gen, f, u, small)});
  }
  return report;
}

}  // namespace qam
