#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sbm/cli.hpp"
#include "sbm/io.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = sbm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sbm_cli_test_" + name);
}

}  // namespace

TEST_CASE("phi table for the Cauchy exponent") {
  const auto r = call({"phi", "--kind", "stable", "--alpha", "1", "--lmin", "1", "--lmax", "100",
                       "--points", "3"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rows[1][1] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
  CHECK(rows[2][1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(r.out.rfind("lambda,phi,psi,ell", 0) == 0);
  CHECK(r.err.find("artifact_version") != std::string::npos);
}

TEST_CASE("json output carries the same values") {
  const std::vector<std::string> base{"phi", "--kind", "stable", "--alpha", "1", "--lmin", "1",
                                      "--lmax", "100", "--points", "3"};
  auto args = base;
  args.insert(args.end(), {"--format", "json"});
  const auto csv = csv_rows(call(base).out);
  const auto r = call(args);
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(j[i]["lambda"].get<double>() == csv[i][0]);
    CHECK(j[i]["phi"].get<double>() == csv[i][1]);
  }
}

TEST_CASE("malformed input is a usage error") {
  auto r = call({"phi", "--phi", "{\"kind\":\"stabel\",\"alpha\":1}"});
  CHECK(r.code == 2);
  CHECK(!r.err.empty());
  CHECK(call({"phi", "--phi", "{not json"}).code == 2);
  CHECK(call({"phi", "--kind", "stable", "--alpha", "1", "--bogus"}).code == 2);
  CHECK(call({"phi"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"phi", "--kind", "stable", "--alpha", "3"}).code == 2);
}

TEST_CASE("kernel, ladder and density examples") {
  auto r = call({"kernel", "--kind", "stable", "--alpha", "1", "--dim", "3", "--r", "1"});
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out)[0][1] == doctest::Approx(0.0506606).epsilon(1e-5));

  r = call({"ladder", "chi", "--kind", "stable", "--alpha", "1", "--lambda", "4"});
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out)[0][1] == doctest::Approx(2.0).epsilon(1e-9));

  r = call({"density", "--kind", "stable", "--alpha", "1", "--t", "1"});
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out)[0][1] == doctest::Approx(0.564190).epsilon(1e-6));

  r = call({"ladder", "green", "--kind", "stable", "--alpha", "1", "--x", "1", "--y", "2"});
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out)[0][2] == doctest::Approx(0.561100).epsilon(1e-4));
}

TEST_CASE("checks report pass and fail through the exit code") {
  auto r = call({"check", "sandwich", "--kind", "sum", "--alpha", "1", "--beta", "0.5"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["pass"].get<bool>());
  CHECK(j.contains("min"));
  CHECK(j.contains("max"));

  r = call({"check", "zahle", "--kind", "stable", "--alpha", "0.5"});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["max"].get<double>() <= 1.58198);

  r = call({"check", "exit", "--kind", "stable", "--alpha", "1", "--radii", "0.5", "--radii", "1",
            "--paths", "400"});
  CHECK((r.code == 0 || r.code == 1));
  j = json::parse(r.out);
  CHECK(j["rows"].size() == 2);
}

TEST_CASE("simulate exit is deterministic and validates paths") {
  const std::vector<std::string> args{"simulate", "exit", "--kind", "stable", "--alpha", "1",
                                      "--dim", "1", "--radius", "1", "--paths", "2000",
                                      "--seed", "7", "--threads", "1"};
  const auto a = call(args);
  REQUIRE(a.code == 0);
  auto more = args;
  more.back() = "3";
  const auto b = call(more);
  CHECK(a.out == b.out);
  const auto j = json::parse(a.out);
  CHECK(std::abs(j["mean"].get<double>() - 1.0) < 4.0 * j["std_error"].get<double>() + 0.02);
  CHECK(j["oracle"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  auto zero = args;
  zero[11] = "0";
  CHECK(call(zero).code == 2);
}

TEST_CASE("manifest replay reproduces the output") {
  const auto out = temp_path("hist.csv");
  const auto copy = temp_path("hist_copy.csv");
  const auto r = call({"simulate", "histogram", "--kind", "stable", "--alpha", "1", "--paths",
                       "500", "--seed", "11", "--out", out.string()});
  REQUIRE(r.code == 0);
  const std::string first = sbm::read_file(out.string());
  const auto manifest = json::parse(sbm::read_file(out.string() + ".manifest.json"));
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["seed"] == 11);
  CHECK(manifest["artifact_version"] == sbm::kArtifactVersion);
  CHECK(manifest.contains("timestamp"));

  std::filesystem::remove(out);
  REQUIRE(call({"replay", out.string() + ".manifest.json"}).code == 0);
  CHECK(sbm::read_file(out.string()) == first);
  CHECK(call({"replay", copy.string()}).code == 2);
}
