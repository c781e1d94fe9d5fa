#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "planecycles/cli.hpp"
#include "planecycles/plane_io.hpp"

using namespace planecycles;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("planecycles_cli_" + name);
}

int count_lines(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  int n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0 ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("parse_range") {
  CHECK(cli::parse_range("3..21") == std::pair{3, 21});
  CHECK(cli::parse_range("5..5") == std::pair{5, 5});
  CHECK_FALSE(cli::parse_range("9..3").has_value());
  CHECK_FALSE(cli::parse_range("3-9").has_value());
  CHECK_FALSE(cli::parse_range("3..x").has_value());
}

TEST_CASE("gen writes a parsable plane") {
  const Result r = run({"gen", "--kind", "projective", "--p", "2"});
  CHECK(r.code == cli::kOk);
  CHECK(count_lines(r.out, "line ") == 7);
  CHECK(read_plane(r.out).num_points() == 7);
  const Result a = run({"gen", "--kind", "affine", "--p", "2", "--k", "2"});
  CHECK(read_plane(a.out).num_points() == 16);
}

TEST_CASE("sweep over a Fano file") {
  const auto path = scratch("fano.txt");
  REQUIRE(run({"gen", "--kind", "projective", "--p", "2", "--out", path.string()}).code == 0);
  const Result r = run({"sweep", "--plane", path.string()});
  CHECK(r.code == cli::kOk);
  CHECK(count_lines(r.out, "#") == 1);
  for (int k = 3; k <= 7; ++k) CHECK(count_lines(r.out, std::to_string(k) + " ok ") == 1);
  CHECK(count_lines(r.err, "k=") == 5);

  const Result j = run({"sweep", "--plane", path.string(), "--format", "json", "--range", "4..6"});
  CHECK(j.code == cli::kOk);
  std::istringstream rows(j.out);
  int n = 0;
  for (std::string line; std::getline(rows, line); ++n) CHECK(nlohmann::json::parse(line).at("ok").get<bool>());
  CHECK(n == 3);
  std::filesystem::remove(path);
}

TEST_CASE("embed writes a verified JSON record") {
  const auto path = scratch("pg4_21.json");
  const Result r = run({"embed", "--kind", "projective", "--p", "2", "--k", "2", "--cycle-k", "21", "--out",
                        path.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.empty());
  const auto j = nlohmann::json::parse(read_file(path));
  CHECK(j.at("k").get<int>() == 21);
  CHECK(j.at("order").get<int>() == 4);
  CHECK(j.at("kind").get<std::string>() == "projective");
  CHECK(j.at("cycle_points").size() == 21);
  CHECK(j.at("verification").at("ok").get<bool>());
  std::filesystem::remove(path);
}

TEST_CASE("validate accepts planes and reports bad ones") {
  const Result ok = run({"validate", "--kind", "affine", "--p", "3"});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.find("valid\n") != std::string::npos);

  const auto bad = scratch("bad.txt");
  write_file(bad, "plane partial order 0 points 4 lines 2\nline 0: 0 1 2\nline 1: 0 1 3\n");
  const Result r = run({"validate", "--plane", bad.string(), "--format", "json"});
  CHECK(r.code == cli::kValidationFailure);
  CHECK_FALSE(nlohmann::json::parse(r.out).at("ok").get<bool>());

  write_file(bad, "plane projective order 2 points 7 lines 1\nline 0: 0 1 nope\n");
  CHECK(run({"validate", "--plane", bad.string()}).code == cli::kParseError);
  std::filesystem::remove(bad);
}

TEST_CASE("exit codes for bad input") {
  CHECK(run({}).code == cli::kParseError);
  CHECK(run({"frobnicate"}).code == cli::kParseError);
  CHECK(run({"embed", "--kind", "projective", "--p", "4", "--cycle-k", "5"}).code == cli::kParseError);
  CHECK(run({"embed", "--kind", "projective", "--p", "2", "--cycle-k", "8"}).code == cli::kParseError);
  CHECK(run({"embed", "--kind", "projective", "--p", "2"}).code == cli::kParseError);
  CHECK(run({"sweep", "--kind", "affine", "--p", "3", "--range", "3..x"}).code == cli::kParseError);
  CHECK(run({"embed", "--plane", "/nonexistent/plane.txt", "--cycle-k", "3"}).code == cli::kParseError);
  // Budget exhaustion is an inconclusive answer.
  CHECK(run({"oracle", "--kind", "affine", "--p", "5", "--cycle-k", "25", "--budget", "5"}).code ==
        cli::kValidationFailure);
  CHECK(run({"oracle", "--kind", "projective", "--p", "2", "--range", "3..8"}).code == cli::kOk);
}

TEST_CASE("export-dot") {
  const Result r = run({"export-dot", "--kind", "projective", "--p", "2"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("graph", 0) == 0);
  CHECK(run({"export-dot", "--kind", "projective", "--p", "2", "--format", "json"}).code == cli::kParseError);
}

TEST_CASE("output is deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"sweep", "--kind", "projective", "--p", "3", "--seed", "4"},
        std::vector<std::string>{"embed", "--kind", "affine", "--p", "7", "--cycle-k", "40"},
        std::vector<std::string>{"validate", "--kind", "projective", "--p", "5", "--format", "json"}}) {
    const Result a = run(args);
    const Result b = run(args);
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
  }
}
