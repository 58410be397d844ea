#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "qam/report.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qam");
  std::ostringstream out;
  std::ostringstream err;
  const int code = qam::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("mean") {
  Result r = run({"mean", "--gen", "power:2", "--interval", "1,10", "--a", "1,7"});
  CHECK(r.code == qam::cli::kOk);
  CHECK(std::stod(r.out) == doctest::Approx(5.0).epsilon(1e-15));

  r = run({"mean", "--gen", "log", "--interval", "0.5,8", "--a", "1,4", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["mean"].get<double>() == doctest::Approx(2.0).epsilon(1e-15));

  r = run({"mean", "--gen", "sine:2", "--interval", "0,6.2831853", "--a", "1,2,3", "--w",
           "0.2,0.3,0.5"});
  CHECK(r.code == 0);
  const double m = std::stod(r.out);
  CHECK(m >= 1.0);
  CHECK(m <= 3.0);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == qam::cli::kUsage);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"mean", "--gen", "power:2", "--interval", "1,10"}).code == 1);
  CHECK(run({"mean", "--gen", "cosh", "--interval", "1,10", "--a", "2"}).code == 1);
  CHECK(run({"mean", "--gen", "log", "--interval", "1,10", "--a", "20"}).code == 1);
  CHECK(run({"mean", "--gen", "log", "--interval", "1,10", "--a", "2", "--format", "xml"}).code ==
        1);
  CHECK(run({"example", "3"}).code == 1);
  CHECK(run({"example", "1", "--n-range", "1..4"}).code == 1);
  CHECK(run({"example", "1", "--n-range", "2..65"}).code == 1);
  const Result r = run({"op", "--gen", "log", "--interval", "1,4", "--point", "2,1,2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("op and norm") {
  Result r = run({"op", "--gen", "identity", "--interval", "0,2", "--point", "2,1,0", "--at", "1",
                  "--format", "json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["B"] == 0.5);
  CHECK(j["B_dual"] == 0.5);
  CHECK(j["A"] == 0.0);

  r = run({"norm", "--gen", "sine:2", "--gen2", "identity", "--interval", "0,2pi", "--alpha", "1",
           "--format", "json"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  REQUIRE(j["norms"].size() == 7);
  CHECK(j["norms"][0]["value"].get<double>() == doctest::Approx(4.0 * std::log(3.0)).epsilon(1e-7));
  CHECK(j["norms"][1]["value"].get<double>() == doctest::Approx(std::log(3.0)).epsilon(1e-8));
  CHECK(j["norms"][3]["value"].get<double>() == doctest::Approx(0.25).epsilon(1e-10));

  CHECK(run({"norm", "--gen", "log", "--interval", "1,2", "--alpha", "0.5"}).code == 1);
}

TEST_CASE("bounds") {
  Result r = run({"bounds", "--gen", "identity", "--gen2", "sine:4", "--interval", "0,2pi",
                  "--format", "json"});
  REQUIRE(r.code == qam::cli::kOk);
  json j = json::parse(r.out);
  CHECK(j["sound"] == true);
  REQUIRE(j["bounds"].size() == 4);
  CHECK(j["bounds"][0]["bound_name"] == "CARGO_SHISHA");
  CHECK(j["bounds"][0]["value"].get<double>() == doctest::Approx(0.125).epsilon(1e-9));
  for (const auto& b : j["bounds"]) {
    if (b["bound_name"] == "OSC") {
      CHECK(b["value"].get<double>() == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-6));
      CHECK(b["capped"] == false);
    }
    if (b["bound_name"] == "L1_SINH") {
      CHECK(b["value"].get<double>() == 2.0 * std::numbers::pi);
      CHECK(b["capped"] == true);
    }
  }

  r = run({"bounds", "--gen", "log", "--gen2", "log", "--interval", "1,4", "--format", "json"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["rho_lower_bound"]["value"] == 0.0);
  for (const auto& b : j["bounds"]) CHECK(b["value"].get<double>() <= 1e-4 * 3.0);

  r = run({"bounds", "--gen", "log", "--gen2", "power:0.5", "--interval", "1,4", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string first;
  std::string second;
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(first.rfind(qam::kCsvVersionLine, 0) == 0);
  CHECK(second == qam::bound_csv_header());
}

TEST_CASE("rho and converge") {
  Result r = run({"rho", "--gen", "identity", "--gen2", "log", "--interval", "1,4", "--format",
                  "json", "--grid", "17", "--rounds", "1"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["rho_lower_bound"]["value"].get<double>() > 0.0);
  CHECK(j["rho_lower_bound"].get<qam::RhoEstimate>().witness_points.size() >= 2);

  r = run({"converge", "--gen", "identity", "--interval", "1,2", "--family", "power", "--n-range",
           "1..3"});
  CHECK(r.code == 1);
  r = run({"converge", "--gen", "identity", "--interval", "1,2", "--family", "power", "--n-range",
           "2..4", "--seq", "power:3", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["rows"].size() == 4);
}

TEST_CASE("example reports are deterministic") {
  for (const std::string which : {"1", "2"}) {
    const Result a = run({"example", which, "--n-range", "2..4", "--format", "json"});
    const Result b = run({"example", which, "--n-range", "2..4", "--format", "json"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const json j = json::parse(a.out);
    CHECK(j["passed"] == true);
    REQUIRE(j["rows"].size() == 3);
    if (which == "1") {
      CHECK(j["rows"][0]["cs_bound"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
      CHECK(j["rows"][0]["l1_A"].get<double>() == doctest::Approx(4.0 * std::log(3.0)).epsilon(1e-6));
    } else {
      CHECK(j["rows"][0]["osc_A"].get<double>() == doctest::Approx(std::log(3.0)).epsilon(1e-8));
      CHECK(j["rows"][0]["osc_bound_raw"].get<double>() ==
            doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-6));
    }
  }
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "qam_cli_out_test.json";
  std::filesystem::remove(path);
  const Result r = run({"mean", "--gen", "power:2", "--interval", "1,10", "--a", "1,7", "--format",
                        "json", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["mean"].get<double>() == doctest::Approx(5.0));
  std::filesystem::remove(path);
}
