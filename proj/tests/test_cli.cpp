#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "randers/commands.hpp"

using randers::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(RANDERS_TEST_DATA) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate: valid, violated and malformed specs") {
  const Result ok = run({"validate", "--config", data("round.json")});
  CHECK(ok.code == 0);
  CHECK(ok.out == "valid\n");
  const Result bad = run({"validate", "--config", data("boundary.json")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("|c|<√a") != std::string::npos);
  const Result broken = run({"validate", "--config", data("truncated.json")});
  CHECK(broken.code == 2);
  CHECK(broken.err.find("parse") != std::string::npos);
  CHECK(run({"validate", "--config", data("missing.json")}).code == 2);
  CHECK(run({"validate"}).code == 2);
}

TEST_CASE("solve prints the closed-form spec") {
  const Result r = run({"solve", "--l", "1", "--m", "1", "--x1", "0.5", "--x2", "1", "--L", "1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["spec"]["a"].get<double>() == doctest::Approx(16.0 / 9.0));
  CHECK(j["spec"]["b"].get<double>() == doctest::Approx(4.0 / 3.0));
  CHECK(j["spec"]["c"].get<double>() == doctest::Approx(-2.0 / 3.0));
  for (const auto& v : j["residuals"]) CHECK(std::abs(v.get<double>()) <= 1e-10);
}

TEST_CASE("solve: infeasible parameters exit 1 naming the condition") {
  const Result r = run({"solve", "--l", "1", "--m", "1", "--x1", "3", "--x2", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("(x1 - m*x2)(x1 + l*x2) < 0") != std::string::npos);
}

TEST_CASE("solve: the scale law across --L") {
  const auto one = nlohmann::json::parse(run({"solve", "--x1", "0.2", "--L", "1"}).out);
  const auto two = nlohmann::json::parse(run({"solve", "--x1", "0.2", "--L", "2"}).out);
  CHECK(two["spec"]["b"].get<double>() == doctest::Approx(4.0 * one["spec"]["b"].get<double>()));
  CHECK(two["spec"]["c"].get<double>() == doctest::Approx(2.0 * one["spec"]["c"].get<double>()));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"verify", "orbit", "--trials", "-3"}).code == 2);
  CHECK(run({"verify", "orbit", "--tolerance", "0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify orbit: constant on the certified instance, deterministic CSV") {
  const std::vector<std::string> args{"verify", "orbit", "--config", data("certified.json"), "--trials", "1000", "--seed", "7"};
  const Result a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("candidate_id,min,max,mean,stddev,verdict\n", 0) == 0);
  CHECK(a.out.find(",constant\n") != std::string::npos);
  const Result other = run({"verify", "orbit", "--config", data("certified.json"), "--trials", "1000", "--seed", "8"});
  CHECK(other.out != a.out);
}

TEST_CASE("verify orbit fails on a mismatched spec") {
  const Result r = run({"verify", "orbit", "--config", data("round.json"), "--x1", "0.5", "--trials", "200"});
  CHECK(r.code == 1);
  CHECK(r.out.find(",non-constant\n") != std::string::npos);
}

TEST_CASE("verify eigenlemma: zero violations and a checker CSV") {
  const Result r = run({"verify", "eigenlemma", "--n", "4", "--trials", "2000", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("trial_id,inputs_hash,verdict,worst_residual\n", 0) == 0);
  CHECK(r.out.find(",fail,") == std::string::npos);
  CHECK(r.out == run({"verify", "eigenlemma", "--n", "4", "--trials", "2000", "--seed", "3"}).out);
}

TEST_CASE("verify commutator: singular and generic blocks") {
  CHECK(run({"verify", "commutator", "--l", "2", "--m", "3", "--trials", "20"}).code == 0);
  CHECK(run({"verify", "commutator", "--kind", "generic", "--l", "2", "--m", "2", "--trials", "20"}).code == 0);
  CHECK(run({"verify", "commutator", "--kind", "weird"}).code == 2);
}

TEST_CASE("verify sp-scan reports every candidate non-constant") {
  const Result r = run({"verify", "sp-scan", "--candidates", "4", "--trials", "300"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",constant\n") == std::string::npos);
}

TEST_CASE("verify probe finds no eigenvalue 1") {
  CHECK(run({"verify", "probe", "--trials", "200"}).code == 0);
}

TEST_CASE("verify displacement on the round central flow, written to --out") {
  const std::string path = "cli_displacement_test.csv";
  const Result r = run({"verify", "displacement", "--points", "3000", "--samples", "10", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "sample_id,vertex,displacement,graph,snapped,snap_gap");
  std::remove(path.c_str());
}

}  // TEST_SUITE
