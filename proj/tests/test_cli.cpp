#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ehaoi/scenario.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "ehaoi_test_cli";

int run(const std::string& args, const std::string& stdout_name = "stdout.txt") {
  const std::string cmd = std::string(EHAOI_CLI_PATH) + " " + args + " > " +
                          (kDir / stdout_name).string() + " 2> " + (kDir / "stderr.txt").string();
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string write_scenario(const std::string& name, const std::string& body) {
  const auto path = kDir / name;
  std::ofstream(path) << body;
  return path.string();
}

struct Fixture {
  Fixture() { fs::create_directories(kDir); }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "analyze prints the report and exits 0") {
  CHECK(run("analyze") == 0);
  const std::string out = slurp(kDir / "stdout.txt");
  CHECK(out.rfind("# ehaoi analyze\n", 0) == 0);
  CHECK(out.find("\nmu_p=0.8449702054") != std::string::npos);
  CHECK(out.find("\naoi_gw=") != std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "bad input exits 2 with a message") {
  CHECK(run("analyze --bogus") == 2);
  CHECK(run("frobnicate") == 2);
  const auto bad = write_scenario("bad.json", R"({"schema_version": 1, "network": {"p_s": 0.5}})");
  CHECK(run("analyze --scenario " + bad) == 2);
  CHECK(slurp(kDir / "stderr.txt").find("network.p_s") != std::string::npos);
  CHECK(run("analyze --scenario " + (kDir / "missing.json").string()) == 2);
  CHECK(run("simulate --slots 10") == 2);
  CHECK(run("sweep --axis1 p_s=0.5,7") == 2);
}

TEST_CASE_FIXTURE(Fixture, "fixed seed gives byte-identical output") {
  const std::string args = "simulate --slots 20000 --replications 2 --seed 7 --jobs 2";
  REQUIRE(run(args + " --out " + (kDir / "a.csv").string(), "a.txt") == 0);
  REQUIRE(run(args + " --out " + (kDir / "b.csv").string(), "b.txt") == 0);
  CHECK(slurp(kDir / "a.txt") == slurp(kDir / "b.txt"));
  CHECK(slurp(kDir / "a.csv") == slurp(kDir / "b.csv"));
  CHECK_FALSE(slurp(kDir / "a.csv").empty());

  REQUIRE(run("sweep --preset fig10", "s1.txt") == 0);
  REQUIRE(run("sweep --preset fig10", "s2.txt") == 0);
  CHECK(slurp(kDir / "s1.txt") == slurp(kDir / "s2.txt"));
}

TEST_CASE_FIXTURE(Fixture, "validate passes on a channel with no secondary users") {
  const auto sc = write_scenario("noise.json", R"({"schema_version": 1,
    "network": {"st_density": 0.0},
    "sim": {"slots": 200000, "replications": 2, "seed": 3}})");
  CHECK(run("validate --scenario " + sc + " --out " + (kDir / "v.csv").string()) == 0);
  const std::string table = slurp(kDir / "stdout.txt");
  CHECK(table.find("overall: PASS") != std::string::npos);
  CHECK(slurp(kDir / "v.csv").find("quantity,policy,analytic,empirical") != std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "simulate writes a trace") {
  const auto trace = (kDir / "trace.csv").string();
  REQUIRE(run("simulate --slots 10000 --replications 1 --policy fcfs --trace " + trace) == 0);
  std::ifstream f(trace);
  std::string header;
  std::getline(f, header);
  CHECK(header == "slot,queue_len,age,active_count,primary_success");
}
