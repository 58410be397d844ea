#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qam/bounds.hpp"
#include "qam/means.hpp"
#include "qam/operators.hpp"
#include "qam/report.hpp"
#include "qam/search.hpp"

namespace qam::cli {

namespace {

using nlohmann::json;

enum class Format { json, csv, plain };

struct Options {
  std::string gen;
  std::string gen2;
  std::string interval;
  std::string a;
  std::string w;
  std::string point;
  std::string at;
  std::string n_range = "2..16";
  std::string format = "plain";
  std::string out;
  std::string family;
  std::vector<std::string> seq;
  double alpha = 0.0;
  std::uint64_t seed = SearchConfig{}.seed;
  int grid = 0;
  int rounds = -1;
  int which = 0;
  bool no_symmetrize = false;
};

/// A violated internal assertion; the report is still written.
struct Outcome {
  std::string text;
  std::vector<std::string> violations;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "plain") return Format::plain;
  throw ParseError("--format must be json, csv or plain");
}

std::pair<int, int> parse_n_range(const std::string& s) {
  const auto dots = s.find("..");
  int a = 0;
  int b = 0;
  try {
    if (dots == std::string::npos) {
      a = b = std::stoi(s);
    } else {
      a = std::stoi(s.substr(0, dots));
      b = std::stoi(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw ParseError("--n-range must look like 2..16");
  }
  if (a < 2 || b > 64 || a > b) throw ParseError("--n-range must lie within 2..64");
  return {a, b};
}

Interval require_interval(const Options& o) {
  if (o.interval.empty()) throw ParseError("--interval lo,hi is required");
  return parse_interval(o.interval);
}

Generator require_gen(const std::string& spec, const char* flag, const Interval& u) {
  if (spec.empty()) throw ParseError(std::string(flag) + " is required");
  return parse_generator(spec, u);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SearchConfig search_config(const Options& o) {
  SearchConfig cfg;
  cfg.seed = o.seed;
  if (o.grid > 0) cfg.grid_per_axis = o.grid;
  if (o.rounds >= 0) cfg.refine_rounds = o.rounds;
  return cfg;
}

Outcome cmd_mean(const Options& o, Format fmt) {
  const Interval u = require_interval(o);
  const Generator gen = require_gen(o.gen, "--gen", u);
  if (o.a.empty()) throw ParseError("--a is required");
  const WeightedSample s(parse_real_list(o.a),
                         o.w.empty() ? std::vector<double>{} : parse_real_list(o.w));
  const double m = qa_mean(gen, s);
  switch (fmt) {
    case Format::json:
      return {dump({{"command", "mean"},
                    {"generator", gen.spec()},
                    {"interval", {u.lo(), u.hi()}},
                    {"points", std::vector<double>(s.points().begin(), s.points().end())},
                    {"weights", std::vector<double>(s.weights().begin(), s.weights().end())},
                    {"mean", m}}),
              {}};
    case Format::csv:
      return {std::string(kCsvVersionLine) + " mean\ngenerator,mean\n" + gen.spec() + "," +
                  format_double(m) + "\n",
              {}};
    case Format::plain:
      break;
  }
  return {format_double(m) + "\n", {}};
}

Outcome cmd_op(const Options& o, Format fmt) {
  const Interval u = require_interval(o);
  const Generator gen = require_gen(o.gen, "--gen", u);
  if (o.point.empty() && o.at.empty()) throw ParseError("op needs --point x,y,z and/or --at x");
  json j{{"command", "op"}, {"generator", gen.spec()}, {"interval", {u.lo(), u.hi()}}};
  std::ostringstream plain;
  std::string csv = std::string(kCsvVersionLine) + " op\nquantity,value\n";
  if (!o.point.empty()) {
    const auto p = parse_real_list(o.point);
    if (p.size() != 3) throw ParseError("--point needs exactly three values x,y,z");
    const double b = pales_b(gen, {p[0], p[1], p[2]});
    const double dual = pales_b(gen, {p[2], p[1], p[0]});
    j["point"] = p;
    j["B"] = b;
    j["B_dual"] = dual;
    plain << "B(x,y,z) = " << format_double(b) << "\nB(z,y,x) = " << format_double(dual) << "\n";
    csv += "B," + format_double(b) + "\nB_dual," + format_double(dual) + "\n";
  }
  if (!o.at.empty()) {
    const double x = parse_real(o.at);
    const double a = arrow_pratt(gen, x);
    j["at"] = x;
    j["A"] = a;
    plain << "A(x) = " << format_double(a) << "\n";
    csv += "A," + format_double(a) + "\n";
  }
  if (fmt == Format::json) return {dump(j), {}};
  if (fmt == Format::csv) return {csv, {}};
  return {plain.str(), {}};
}

Outcome cmd_norm(const Options& o, Format fmt) {
  const Interval u = require_interval(o);
  const Generator f = require_gen(o.gen, "--gen", u);
  std::vector<NamedEstimate> rows{{"L1(A_f)", l1_norm(arrow_pratt_fn(f), u)},
                                  {"OSC(A_f)", osc_norm(arrow_pratt_fn(f), u)},
                                  {"INF|f'|", inf_abs_deriv(f, u)}};
  if (!o.gen2.empty()) {
    const Generator g = parse_generator(o.gen2, u);
    rows.push_back({"SUP|f-g|", sup_norm(difference_fn(f, g), u)});
    rows.push_back({"L1(A_f-A_g)", l1_norm(arrow_pratt_diff_fn(f, g), u)});
    rows.push_back({"OSC(A_f-A_g)", osc_norm(arrow_pratt_diff_fn(f, g), u)});
    if (o.alpha > 0.0) rows.push_back({"SUP_B_DIFF(alpha)", sup_b_diff(f, g, o.alpha, u)});
  } else if (o.alpha > 0.0) {
    throw ParseError("--alpha needs --gen2");
  }
  if (fmt == Format::json) {
    json arr = json::array();
    for (const auto& r : rows) {
      json e = r.estimate;
      e["label"] = r.label;
      arr.push_back(std::move(e));
    }
    json j{{"command", "norm"}, {"generator", f.spec()}, {"interval", {u.lo(), u.hi()}}};
    if (!o.gen2.empty()) j["generator2"] = o.gen2;
    j["norms"] = std::move(arr);
    return {dump(j), {}};
  }
  std::ostringstream s;
  if (fmt == Format::csv) {
    s << kCsvVersionLine << " norm\nlabel,kind,value,refinement_error,grid_size\n";
    for (const auto& r : rows) {
      s << r.label << ',' << to_string(r.estimate.kind) << ',' << format_double(r.estimate.value)
        << ',' << format_double(r.estimate.refinement_error) << ',' << r.estimate.grid_size
        << '\n';
    }
  } else {
    for (const auto& r : rows) {
      s << r.label << " = " << format_double(r.estimate.value)
        << "  (refinement error " << format_double(r.estimate.refinement_error) << ")\n";
    }
  }
  return {s.str(), {}};
}

Outcome cmd_bounds(const Options& o, Format fmt) {
  const Interval u = require_interval(o);
  const Generator f = require_gen(o.gen, "--gen", u);
  const Generator g = require_gen(o.gen2, "--gen2", u);
  const auto bounds = best_bound(f, g, u, BoundOptions{!o.no_symmetrize});
  const RhoEstimate rho = rho_lower_bound(f, g, u, search_config(o));
  Outcome res;
  for (const auto& b : bounds) {
    if (b.hypotheses_ok && rho.value > b.value + 1e-6) {
      res.violations.push_back(std::string(to_string(b.name)) + " = " + format_double(b.value) +
                               " is below the empirical rho " + format_double(rho.value));
    }
  }
  switch (fmt) {
    case Format::json:
      res.text = dump({{"command", "bounds"},
                       {"generator", f.spec()},
                       {"generator2", g.spec()},
                       {"interval", {u.lo(), u.hi()}},
                       {"bounds", bounds},
                       {"rho_lower_bound", rho},
                       {"sound", res.violations.empty()}});
      break;
    case Format::csv: {
      std::string s = std::string(kCsvVersionLine) + " bounds\n" + bound_csv_header() + "\n";
      for (const auto& b : bounds) s += to_csv_row(b) + "\n";
      s += "RHO_LOWER_BOUND," + format_double(rho.value) + "," + format_double(rho.value) +
           ",1,1,0\n";
      res.text = s;
      break;
    }
    case Format::plain: {
      std::ostringstream s;
      for (const auto& b : bounds) {
        s << to_string(b.name) << " = " << format_double(b.value);
        if (b.capped) s << "  (capped; formula " << format_double(b.raw_value) << ")";
        if (!b.hypotheses_ok) s << "  (hypotheses not verified)";
        s << '\n';
      }
      s << "rho lower bound = " << format_double(rho.value) << '\n';
      res.text = s.str();
      break;
    }
  }
  return res;
}

Outcome cmd_rho(const Options& o, Format fmt) {
  const Interval u = require_interval(o);
  const Generator f = require_gen(o.gen, "--gen", u);
  const Generator g = require_gen(o.gen2, "--gen2", u);
  const RhoEstimate rho = rho_lower_bound(f, g, u, search_config(o));
  if (fmt == Format::json) {
    return {dump({{"command", "rho"},
                  {"generator", f.spec()},
                  {"generator2", g.spec()},
                  {"interval", {u.lo(), u.hi()}},
                  {"rho_lower_bound", rho}}),
            {}};
  }
  std::ostringstream s;
  auto list = [](const std::vector<double>& v) {
    std::string r;
    for (std::size_t i = 0; i < v.size(); ++i) r += (i ? ";" : "") + format_double(v[i]);
    return r;
  };
  if (fmt == Format::csv) {
    s << kCsvVersionLine << " rho\nvalue,witness_points,witness_weights,evaluations\n"
      << format_double(rho.value) << ',' << list(rho.witness_points) << ','
      << list(rho.witness_weights) << ',' << rho.evaluations << '\n';
  } else {
    s << "rho lower bound = " << format_double(rho.value) << "\na = " << list(rho.witness_points)
      << "\nw = " << list(rho.witness_weights) << '\n';
  }
  return {s.str(), {}};
}

struct ExampleRow {
  int n = 0;
  double sup_diff = 0.0;
  double cs_bound = 0.0;
  double l1_a = 0.0;
  double l1_a_closed = 0.0;
  double osc_a = 0.0;
  double osc_a_closed = 0.0;
  double osc_bound = 0.0;
  double osc_bound_raw = 0.0;
  double l1_bound = 0.0;
  double l1_bound_raw = 0.0;
  double rho_lb = 0.0;
};

Outcome cmd_example(const Options& o, Format fmt) {
  if (o.which != 1 && o.which != 2) throw ParseError("example must be 1 or 2");
  const auto [first, last] = parse_n_range(o.n_range);
  const Interval u(0.0, 2.0 * std::numbers::pi);
  const Generator id = Generator::identity(u);
  SearchConfig cfg;
  cfg.seed = o.seed;

  Outcome res;
  std::vector<ExampleRow> rows;
  for (int n = first; n <= last; ++n) {
    const Generator fn = Generator::sine(n, u);
    const double nn = n;
    ExampleRow r;
    r.n = n;
    r.sup_diff = sup_norm(difference_fn(fn, id), u).value;
    r.cs_bound = bound_cargo_shisha(id, fn, u).raw_value;
    r.l1_a = l1_norm(arrow_pratt_fn(fn), u).value;
    r.l1_a_closed = 2.0 * nn * std::log((nn + 1.0) / (nn - 1.0));
    r.osc_a = osc_norm(arrow_pratt_fn(fn), u).value;
    r.osc_a_closed = std::log((nn + 1.0) / (nn - 1.0));
    const BoundReport osc = bound_osc(id, fn, u);
    r.osc_bound = osc.value;
    r.osc_bound_raw = osc.raw_value;
    const BoundReport l1 = bound_l1(id, fn, u);
    r.l1_bound = l1.value;
    r.l1_bound_raw = l1.raw_value;
    r.rho_lb = rho_lower_bound(id, fn, u, cfg).value;

    auto check = [&](bool ok, const std::string& what) {
      if (!ok) res.violations.push_back("n = " + std::to_string(n) + ": " + what);
    };
    const double inv_sq = 1.0 / (nn * nn);
    if (o.which == 1) {
      check(std::abs(r.sup_diff - inv_sq) <= 1e-10, "sup|f_n - id| != n^-2");
      check(std::abs(r.cs_bound - 2.0 * inv_sq) <= 1e-9, "CS bound != 2 n^-2");
      check(std::abs(r.l1_a - r.l1_a_closed) <= 1e-6 * r.l1_a_closed,
            "L1(A_fn) != 2n ln((n+1)/(n-1))");
      // The closed form decreases from 4 ln 3 at n = 2 towards 4.
      if (n == 2) {
        check(std::abs(r.l1_a - 4.0 * std::log(3.0)) <= 1e-6 * 4.0 * std::log(3.0),
              "L1(A_f2) != 4 ln 3");
      }
      check(r.l1_a >= 4.0, "L1(A_fn) < 4");
      check(r.rho_lb <= 2.0 * inv_sq + 1e-9, "rho lower bound exceeds 2 n^-2");
    } else {
      const double osc_closed = 4.0 * std::numbers::pi / (nn - 1.0);
      check(std::abs(r.osc_a - r.osc_a_closed) <= 1e-8, "OSC(A_fn) != ln((n+1)/(n-1))");
      check(std::abs(r.osc_bound_raw - osc_closed) <= 1e-6 * osc_closed,
            "OSC bound != 4 pi/(n-1)");
      check(r.cs_bound < r.osc_bound_raw && r.osc_bound_raw < r.l1_bound_raw,
            "rate ordering CS < OSC < L1_SINH fails");
      check(r.rho_lb <= r.osc_bound + 1e-6, "rho lower bound exceeds the OSC bound");
    }
    rows.push_back(r);
  }

  switch (fmt) {
    case Format::json: {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"n", r.n},
                       {"sup_diff", r.sup_diff},
                       {"cs_bound", r.cs_bound},
                       {"l1_A", r.l1_a},
                       {"l1_A_closed_form", r.l1_a_closed},
                       {"osc_A", r.osc_a},
                       {"osc_A_closed_form", r.osc_a_closed},
                       {"osc_bound", r.osc_bound},
                       {"osc_bound_raw", r.osc_bound_raw},
                       {"l1_bound", r.l1_bound},
                       {"l1_bound_raw", std::isfinite(r.l1_bound_raw) ? json(r.l1_bound_raw)
                                                                       : json(nullptr)},
                       {"rho_lower_bound", r.rho_lb}});
      }
      res.text = dump({{"command", "example"},
                       {"example", o.which},
                       {"interval", {u.lo(), u.hi()}},
                       {"seed", o.seed},
                       {"rows", arr},
                       {"violations", res.violations},
                       {"passed", res.violations.empty()}});
      break;
    }
    case Format::csv:
    case Format::plain: {
      std::ostringstream s;
      const char sep = fmt == Format::csv ? ',' : '\t';
      if (fmt == Format::csv) s << kCsvVersionLine << " example " << o.which << '\n';
      s << "n" << sep << "sup_diff" << sep << "cs_bound" << sep << "l1_A" << sep
        << "l1_A_closed_form" << sep << "osc_A" << sep << "osc_A_closed_form" << sep
        << "osc_bound" << sep << "osc_bound_raw" << sep << "l1_bound" << sep << "l1_bound_raw"
        << sep << "rho_lower_bound\n";
      for (const auto& r : rows) {
        s << r.n << sep << format_double(r.sup_diff) << sep << format_double(r.cs_bound) << sep
          << format_double(r.l1_a) << sep << format_double(r.l1_a_closed) << sep
          << format_double(r.osc_a) << sep << format_double(r.osc_a_closed) << sep
          << format_double(r.osc_bound) << sep << format_double(r.osc_bound_raw) << sep
          << format_double(r.l1_bound) << sep << format_double(r.l1_bound_raw) << sep
          << format_double(r.rho_lb) << '\n';
      }
      res.text = s.str();
      break;
    }
  }
  return res;
}

Outcome cmd_converge(const Options& o, Format fmt) {
  const Interval u = require_interval(o);
  const Generator f = require_gen(o.gen, "--gen", u);
  std::vector<Generator> seq;
  for (const auto& s : o.seq) seq.push_back(parse_generator(s, u));
  if (!o.family.empty()) {
    const auto [first, last] = parse_n_range(o.n_range);
    for (int n = first; n <= last; ++n) {
      if (o.family == "sine") {
        seq.push_back(Generator::sine(n, u));
      } else if (o.family == "power") {
        seq.push_back(Generator::power(1.0 + 1.0 / n, u));
      } else {
        throw ParseError("--family must be sine or power");
      }
    }
  }
  if (seq.empty()) throw ParseError("converge needs --seq or --family");
  const ConvergenceReport rep = convergence_diagnostic(seq, f, u, o.grid > 0 ? o.grid : 32);
  if (fmt == Format::json) {
    json j = rep;
    j["command"] = "converge";
    return {dump(j), {}};
  }
  std::ostringstream s;
  const char sep = fmt == Format::csv ? ',' : '\t';
  if (fmt == Format::csv) s << kCsvVersionLine << " converge\n";
  s << "generator" << sep << "b_deviation" << sep << "rho_lower_bound\n";
  for (const auto& r : rep.rows) {
    s << r.generator << sep << format_double(r.b_deviation) << sep << format_double(r.rho.value)
      << '\n';
  }
  return {s.str(), {}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-arithmetic means: distances, operators, norms and bounds", "qam"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json, csv or plain")->capture_default_str();
    sub->add_option("--out", o.out, "write the report to this file");
  };
  auto gens = [&](CLI::App* sub, bool two) {
    sub->add_option("--gen", o.gen, "generator, e.g. power:2, sine:4, affine:3,-1:log");
    if (two) sub->add_option("--gen2", o.gen2, "second generator");
    sub->add_option("--interval", o.interval, "working interval lo,hi (2pi accepted)");
  };
  auto search = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "seed of the random-restart phase");
    sub->add_option("--grid", o.grid, "grid nodes per axis");
    sub->add_option("--rounds", o.rounds, "refinement rounds");
  };

  auto* mean = app.add_subcommand("mean", "quasi-arithmetic mean of a sample");
  gens(mean, false);
  mean->add_option("--a", o.a, "points, comma separated");
  mean->add_option("--w", o.w, "weights, comma separated (default uniform)");
  common(mean);

  auto* op = app.add_subcommand("op", "Pales operator B and Arrow-Pratt operator A");
  gens(op, false);
  op->add_option("--point", o.point, "x,y,z for B_f(x,y,z)");
  op->add_option("--at", o.at, "x for A_f(x)");
  common(op);

  auto* norm = app.add_subcommand("norm", "L1, sup, oscillation and B-difference norms");
  gens(norm, true);
  norm->add_option("--alpha", o.alpha, "separation for sup |B_f - B_g| over Delta_alpha");
  common(norm);

  auto* bounds = app.add_subcommand("bounds", "all four upper bounds plus the empirical rho");
  gens(bounds, true);
  search(bounds);
  bounds->add_flag("--no-symmetrize", o.no_symmetrize, "keep the (f, g) ordering only");
  common(bounds);

  auto* rho = app.add_subcommand("rho", "worst-case search for rho(M_f, M_g)");
  gens(rho, true);
  search(rho);
  common(rho);

  auto* example = app.add_subcommand("example", "reproduce the sine-perturbed examples");
  example->add_option("which", o.which, "1 or 2")->required();
  example->add_option("--n-range", o.n_range, "range of n, e.g. 2..16")->capture_default_str();
  example->add_option("--seed", o.seed, "seed of the random-restart phase");
  common(example);

  auto* converge = app.add_subcommand("converge", "convergence diagnostic for a sequence");
  gens(converge, false);
  converge->add_option("--seq", o.seq, "sequence member (repeatable)");
  converge->add_option("--family", o.family, "sine (sine:n) or power (power:1+1/n)");
  converge->add_option("--n-range", o.n_range, "range of n for --family");
  converge->add_option("--grid", o.grid, "grid intervals per axis (default 32)");
  common(converge);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  Outcome res;
  try {
    const Format fmt = parse_format(o.format);
    if (*mean) res = cmd_mean(o, fmt);
    else if (*op) res = cmd_op(o, fmt);
    else if (*norm) res = cmd_norm(o, fmt);
    else if (*bounds) res = cmd_bounds(o, fmt);
    else if (*rho) res = cmd_rho(o, fmt);
    else if (*example) res = cmd_example(o, fmt);
    else if (*converge) res = cmd_converge(o, fmt);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (o.out.empty()) {
    out << res.text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << o.out << '\n';
      return kUsage;
    }
    file << res.text;
  }
  for (const auto& v : res.violations) err << "violation: " << v << '\n';
  return res.violations.empty() ? kOk : kViolation;
}

}  // namespace qam::cli
