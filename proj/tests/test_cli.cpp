#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "envalg/pbw.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("envalg_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the binary with stdout and stderr captured; returns the exit status.
int run(const std::string& args, std::string* out = nullptr) {
  const auto log = scratch() / "stdout.txt";
  const std::string cmd = std::string(ENVALG_BIN) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream f(log);
    std::stringstream ss;
    ss << f.rdbuf();
    *out = ss.str();
  }
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* const kViolating = "\"rows:1,2,0,3;0,1,5,0;0,0,2,1;4,0,0,3\"";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit code 0 on an all-pass suite") {
  std::string out;
  CHECK(run("verify theorem1 --algebra gl:3 --A diag:1,2,0 --max-power 3", &out) == 0);
  CHECK(out.find("-> PASS") != std::string::npos);
  CHECK(run("expand --algebra gl:2 --M 2 --A diag:1,2", &out) == 0);
  CHECK(out.find("2*X[1,1] + 4*X[2,2]") != std::string::npos);
  CHECK(run("classical duality --algebra gl:2 --M 2 --k 1", &out) == 0);
  CHECK(out.find("M-k-1") != std::string::npos);
}

TEST_CASE("exit code 1 on a failing check") {
  std::string out;
  CHECK(run(std::string("verify theorem2 --algebra so:4 --A ") + kViolating, &out) == 1);
  CHECK(out.find("FAIL") != std::string::npos);
  CHECK(out.find("residual:") != std::string::npos);
  CHECK(run("rank --algebra gl:2 --poly \"X[1,1] + X[2,2]\" --poly \"X[1,2].X[2,1]\"") == 1);
}

TEST_CASE("exit code 2 on bad input") {
  std::string out;
  CHECK(run("verify theorem1 --algebra gl:0", &out) == 2);
  CHECK(run("verify theorem1 --algebra gl:2 --A diag:1,2,3") == 2);
  CHECK(run("verify theorem1 --algebra gl:2 --A bogus") == 2);
  CHECK(run("verify theorem2 --algebra gl:2") == 2);
  CHECK(run("verify nosuch --algebra gl:2") == 2);
  CHECK(run("verify theorem1") == 2);
  CHECK(run("verify theorem1 --algebra gl:2 --bogus-flag") == 2);
  CHECK(run("", &out) == 2);
  CHECK(run(std::string("chain ") + ENVALG_TEST_DATA + "/invalid_step.json") == 2);
  CHECK(run("chain /nonexistent/chain.json") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("chain reports commutativity and rank") {
  std::string out;
  CHECK(run(std::string("chain ") + ENVALG_TEST_DATA + "/gl4.json", &out) == 0);
  const auto report = scratch() / "gl3_chain.json";
  CHECK(run(std::string("chain ") + ENVALG_TEST_DATA + "/sp2.json --out " + report.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["verdict"] == "PASS");
  CHECK(j["seed"] == 42);
}

TEST_CASE("reports are byte-identical across runs and job counts") {
  const auto a = scratch() / "a.json";
  const auto b = scratch() / "b.json";
  const auto c = scratch() / "c.json";
  const std::string base = "verify theorem2 --algebra so:4 --max-power 3 --seed 7 --out ";
  REQUIRE(run(base + a.string() + " --jobs 1") == 0);
  REQUIRE(run(base + b.string() + " --jobs 1") == 0);
  REQUIRE(run(base + c.string() + " --jobs 4") == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == slurp(c));
  CHECK(slurp(a).find("wall_ms") == std::string::npos);

  const auto r1 = scratch() / "r1.json";
  const auto r2 = scratch() / "r2.json";
  REQUIRE(run(std::string("chain ") + ENVALG_TEST_DATA + "/so5.json --seed 3 --out " + r1.string()) == 0);
  REQUIRE(run(std::string("chain ") + ENVALG_TEST_DATA + "/so5.json --seed 3 --jobs 3 --out " + r2.string()) == 0);
  CHECK(slurp(r1) == slurp(r2));
}

TEST_CASE("FAIL residuals re-parse to nonzero polynomials") {
  const auto report = scratch() / "fail.json";
  REQUIRE(run(std::string("verify theorem2 --algebra so:4 --A ") + kViolating + " --out " + report.string()) == 1);
  const auto j = nlohmann::json::parse(slurp(report));
  const auto so4 = envalg::UniversalEnveloping::of(envalg::parse_algebra(j["algebra"].get<std::string>()));
  int failures = 0;
  for (const auto& check : j["checks"]) {
    if (check["status"] != "FAIL") continue;
    ++failures;
    REQUIRE(check.contains("residual"));
    const auto p = envalg::parse_polynomial(so4, check["residual"].get<std::string>());
    CHECK_FALSE(p.is_zero());
    CHECK(envalg::format(p) == check["residual"].get<std::string>());
  }
  CHECK(failures > 0);
}

}  // TEST_SUITE
