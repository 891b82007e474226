#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "secular/cli.hpp"
#include "secular/errors.hpp"
#include "secular/io.hpp"

using namespace secular;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("secular_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main_with_args(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kGolden = R"({"dim": 2, "T": [[2, 0], [0, 1]], "z": [0, 1]})";

}  // namespace

TEST_CASE("parse_instance: valid and invalid files") {
  const Instance inst = parse_instance(write_temp("golden.json", kGolden));
  CHECK(inst.op_norm() == 2.0);

  auto code = [](const std::string& name, const std::string& text) {
    try {
      parse_instance(write_temp(name, text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code("asym.json", R"({"dim": 2, "T": [[2, 1], [0, 1]], "z": [0, 1]})") == ErrorCode::AsymmetricOperator);
  CHECK(code("zero.json", R"({"dim": 2, "T": [[2, 0], [0, 1]], "z": [0, 0]})") == ErrorCode::ZeroZ);
  CHECK(code("rows.json", R"({"dim": 2, "T": [[2, 0]], "z": [0, 1]})") == ErrorCode::SchemaError);
  CHECK(code("nodim.json", R"({"T": [[2, 0], [0, 1]], "z": [0, 1]})") == ErrorCode::SchemaError);
  CHECK(code("bad.json", "{not json") == ErrorCode::SchemaError);
  CHECK(code("str.json", R"({"dim": 2, "T": [[2, "x"], [0, 1]], "z": [0, 1]})") == ErrorCode::SchemaError);
  try {
    parse_instance(write_temp("row1.json", R"({"dim": 2, "T": [[2, 0], [0]], "z": [0, 1]})"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("T[1]") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_instance("/nonexistent/secular.json"), Error);
}

TEST_CASE("cli: input errors exit with 2") {
  const auto asym = write_temp("cli_asym.json", R"({"dim": 2, "T": [[2, 1], [0, 1]], "z": [0, 1]})");
  auto r = run_cli({"--input", asym, "diagnose"});
  CHECK(r.code == cli::kInputError);
  CHECK(r.out.find("AsymmetricOperator") != std::string::npos);

  r = run_cli({"--input", write_temp("cli_zero.json", R"({"dim": 1, "T": [[1]], "z": [0]})"), "eig"});
  CHECK(r.code == cli::kInputError);
  CHECK(r.out.find("ZeroZ") != std::string::npos);

  CHECK(run_cli({"frobnicate"}).code == cli::kInputError);
  CHECK(run_cli({"--input", "/nonexistent.json", "eig"}).code == cli::kInputError);
  CHECK(run_cli({"--input", write_temp("g0.json", kGolden), "max"}).code == cli::kInputError);
}

TEST_CASE("cli: audit on the golden instance") {
  const auto r = run_cli({"--input", write_temp("g1.json", kGolden), "audit", "--from", "0.01", "--to", "0.9"});
  REQUIRE(r.code == cli::kSuccess);
  const Json doc = Json::parse(r.out);
  CHECK(doc["monotone_gamma"] == true);
  CHECK(doc["strictly_concave"] == true);
  CHECK(doc["monotone_g"] == true);
}

TEST_CASE("cli: max past theta reports the hard case") {
  const auto r = run_cli({"--input", write_temp("g2.json", kGolden), "max", "--r", "4"});
  REQUIRE(r.code == cli::kSuccess);
  const Json doc = Json::parse(r.out);
  CHECK(doc["regime"] == "HardCase");
  CHECK(doc["well_posed"] == false);
  CHECK(std::abs(doc["gamma"].get<double>() - 9.0) <= 1e-10);
}

TEST_CASE("cli: curve past theta is a domain error naming theta") {
  const auto r = run_cli({"--input", write_temp("g3.json", kGolden), "curve", "--from", "0.1", "--to", "2"});
  CHECK(r.code == cli::kDomainError);
  const Json doc = Json::parse(r.out);
  CHECK(doc["error"] == "OutOfRange");
  CHECK(doc["theta"] == 1.0);
  CHECK(doc["message"].get<std::string>().find("theta") != std::string::npos);
}

TEST_CASE("cli: infinite theta is encoded as a string") {
  const auto path = write_temp("inf.json", R"({"dim": 2, "T": [[2, 0], [0, 1]], "z": [1, 0]})");
  const auto r = run_cli({"--input", path, "diagnose"});
  REQUIRE(r.code == cli::kSuccess);
  CHECK(Json::parse(r.out)["theta"] == "inf");
}

TEST_CASE("cli: reports are deterministic") {
  const auto path = write_temp("g4.json", kGolden);
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"--input", path, "--seed", "3", "wellposed", "--r", "0.5", "--samples", "200"},
        std::vector<std::string>{"--input", path, "--format", "csv", "curve", "--from", "0.01", "--to", "0.9"},
        std::vector<std::string>{"--seed", "1", "counterexample", "l2", "--n", "6"}}) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.code == cli::kSuccess);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cli: csv curve output") {
  const auto r = run_cli({"--input", write_temp("g5.json", kGolden), "--format", "csv", "curve", "--from",
                          "0.25", "--to", "0.81", "--steps", "3"});
  REQUIRE(r.code == cli::kSuccess);
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "r,gamma,gamma_prime,g_inverse,fd_gamma_prime,euler_residual");
  CHECK(first.rfind("0.25,1.25,3", 0) == 0);
}

TEST_CASE("cli: output file, resolve and dirichlet") {
  const auto path = write_temp("g6.json", kGolden);
  const auto out = (std::filesystem::temp_directory_path() / "secular_test_resolve.json").string();
  auto r = run_cli({"--input", path, "--output", out, "resolve", "--lambda", "3", "--backend", "contraction"});
  REQUIRE(r.code == cli::kSuccess);
  CHECK(r.out.empty());
  std::ifstream in(out);
  const Json doc = Json::parse(in);
  CHECK(std::abs(doc["v_hat"][1].get<double>() + 0.5) <= 1e-11);

  r = run_cli({"--input", path, "resolve", "--lambda", "2"});
  CHECK(r.code == cli::kDomainError);
  CHECK(Json::parse(r.out)["error"] == "LambdaTooSmall");

  r = run_cli({"dirichlet", "--n", "19", "--grid", "0.01,0.1,1"});
  REQUIRE(r.code == cli::kSuccess);
  CHECK(Json::parse(r.out)["samples"].size() == 3);

  r = run_cli({"dirichlet", "--n", "19", "--phi", "eig2", "--grid", "0.01,100"});
  CHECK(r.code == cli::kDomainError);
}
