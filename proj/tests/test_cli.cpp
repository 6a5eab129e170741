#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef TRM_CLI_PATH
#error "TRM_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = {}) {
  const std::string cmd = (env.empty() ? std::string() : env + " ") +
                          TRM_CLI_PATH + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void write_k1_space(const std::string& path) {
  std::ofstream out(path);
  out << R"({"schema": 1, "grid": {"nx": 32, "ny": 32}, "basis": ["one"]})";
}

}  // namespace

TEST_CASE("dist subcommand") {
  SUBCASE("ascending vertical at t = 1 costs log 2") {
    const RunResult r = run_cli("dist --from i --to 2i --t 1");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(std::abs(j["delta_t"].get<double>() - std::log(2.0)) < 1e-12);
  }
  SUBCASE("descending vertical is free") {
    const RunResult r = run_cli("dist --from 2i --to i --t 1");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["delta_t"].get<double>()) < 1e-12);
  }
  SUBCASE("coincident points give zeros") {
    const RunResult r = run_cli("dist --from i --to i --t 0.5 --f 1,1");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["d_teich"].get<double>() == 0.0);
    CHECK(j["delta_t"].get<double>() == 0.0);
    CHECK(j["delta_omega"].get<double>() == 0.0);
  }
}

TEST_CASE("CLI error handling and exit codes") {
  CHECK(run_cli("dist --from zzz --to i").exit_code == 2);     // parse error
  CHECK(run_cli("dist --from 1-2i --to i").exit_code == 3);    // lower half
  CHECK(run_cli("dist --from i --to 2i --f 0,0").exit_code == 3);
  CHECK(run_cli("verify --suite nosuch").exit_code == 2);
  CHECK(run_cli("ray --base i --g 0,1 --f 1,0 --samples 1").exit_code == 2);
  CHECK(run_cli("geodesic --from i --to 2i --samples 1").exit_code == 2);
  CHECK(run_cli("dist --from i --to 2i --t 1.5").exit_code == 3);
}

TEST_CASE("ray subcommand") {
  const RunResult r =
      run_cli("ray --base i --g 0,1 --f 1,0 --tmax 20 --samples 41 --out json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "Bounded");
  CHECK(std::abs(j["limit_estimate"].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(j["walsh_value"].get<double>() - 1.0) < 1e-12);
  CHECK(j["rows"].size() == 41);

  const RunResult csv =
      run_cli("ray --base i --g 1,0 --f 1,0 --tmax 5 --samples 11 --out csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("t,delta_omega,decay,im\n", 0) == 0);
  CHECK(csv.out.find("# verdict,Divergent") != std::string::npos);
}

TEST_CASE("geodesic subcommand emits csv with headers first") {
  const RunResult r = run_cli("geodesic --from i --to 1+i --samples 5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("s,re,im,norm\n", 0) == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 6);
}

TEST_CASE("cometric subcommand") {
  const std::string space = "trm_cli_space.json";
  write_k1_space(space);
  SUBCASE("one-dimensional value 2/3") {
    const RunResult r =
        run_cli("cometric --space " + space + " --phi 1 --psi 0.5");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["g_omega"].get<double>() - 2.0 / 3.0) < 1e-9);
    CHECK(j["boundary_residual"].get<double>() <= 1e-9);
  }
  SUBCASE("zero form gives the L1 norm") {
    const RunResult r =
        run_cli("cometric --space " + space + " --phi 0.8-0.6i --psi 0");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["g_omega"].get<double>() - 1.0) < 1e-9);
  }
  SUBCASE("over-unit form rejected with the domain exit code") {
    const RunResult r =
        run_cli("cometric --space " + space + " --phi 1 --psi 1.2");
    CHECK(r.exit_code == 3);
  }
  std::remove(space.c_str());
}

TEST_CASE("isometry-check subcommand") {
  const RunResult r = run_cli("isometry-check --f 1,1 --t 1 --pairs 200");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["max_deviation"].get<double>() <= 1e-9);
}

TEST_CASE("TRM_SEED overrides the default seed") {
  const std::string cmd = std::string("TRM_SEED=5 ") + TRM_CLI_PATH +
                          " isometry-check --f 1,1 --pairs 50 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  REQUIRE(pclose(pipe) == 0);
  CHECK(nlohmann::json::parse(out)["seed"] == 5);
  CHECK(run_cli("dist --from i --to 2i", "TRM_SEED=junk").exit_code == 2);
}

TEST_CASE("verify is deterministic for a fixed seed") {
  const RunResult a = run_cli("verify --suite halfplane --seed 1");
  const RunResult b = run_cli("verify --suite halfplane --seed 1");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["pass"] == true);
  CHECK(j["suite"] == "halfplane");
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("anchor"));
    CHECK(c.contains("max_violation"));
  }
}
