#include "support/oracles.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" + std::string(CRNSR_CLI) + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture_path(const std::string& name) { return std::string(CRNSR_FIXTURES_DIR) + "/" + name + ".rxn"; }

std::string golden(const std::string& name) {
  return crnsr::oracle::read_file(std::string(CRNSR_GOLDEN_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("analyze prints the text report") {
  const Run r = run("analyze " + fixture_path("sys1"));
  CHECK(r.code == 0);
  CHECK(r.out == golden("sys1_report.txt"));
}

TEST_CASE("analyze --format json") {
  const Run r = run("analyze " + fixture_path("sys2") + " --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"condition_star\": \"holds\"") != std::string::npos);
  CHECK(r.out.find("\"schema_version\": 1") != std::string::npos);
}

TEST_CASE("analyze -o writes a file") {
  const auto path = std::filesystem::temp_directory_path() / "crnsr_cli_report.txt";
  const Run r = run("analyze " + fixture_path("sys1") + " -o " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(crnsr::oracle::read_file(path.string()) == golden("sys1_report.txt"));
  std::filesystem::remove(path);
}

TEST_CASE("graph export") {
  CHECK(run("graph " + fixture_path("sys1")).out == golden("sys1_sr.dot"));
  const Run dsr = run("graph --dsr " + fixture_path("abc_irreversible"));
  CHECK(dsr.code == 0);
  CHECK(dsr.out == golden("abc_irreversible_dsr.dot"));
  CHECK(dsr.out.find("->") != std::string::npos);
  const Run json = run("graph " + fixture_path("sys1") + " --format json");
  CHECK(json.code == 0);
  CHECK(json.out.find("\"edges\"") != std::string::npos);
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("analyze").code == 2);
  CHECK(run("analyze " + fixture_path("sys1") + " --bogus").code == 2);
  CHECK(run("analyze " + fixture_path("sys1") + " --format xml").code == 2);
  CHECK(run("analyze /nonexistent/file.rxn").code == 2);

  const auto empty = std::filesystem::temp_directory_path() / "crnsr_cli_empty.rxn";
  std::ofstream(empty).close();
  CHECK(run("graph " + empty.string()).code == 2);

  const auto bad = std::filesystem::temp_directory_path() / "crnsr_cli_bad.rxn";
  std::ofstream(bad) << "A + <-> B\n";
  CHECK(run("analyze " + bad.string()).code == 2);
  std::filesystem::remove(empty);
  std::filesystem::remove(bad);
}

TEST_CASE("--help exits 0") { CHECK(run("--help").code == 0); }

TEST_CASE("cycle cap makes the verdict inconclusive") {
  const Run r = run("analyze " + fixture_path("dependent_extended") + " --cycle-cap 1");
  CHECK(r.code == 3);
  CHECK(r.out.find("inconclusive") != std::string::npos);
}

TEST_CASE("simulate is deterministic in the seed") {
  const std::string args = "simulate " + fixture_path("sys1") + " --horizon 2 --points 11";
  const Run a = run(args + " --seed 7");
  const Run b = run(args + " --seed 7");
  const Run c = run(args + " --seed 8");
  const Run env = run(args, "CRNSR_SEED=7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(env.out == a.out);
  CHECK(a.out.rfind("t,A1,A2,A3,B1,B2\n", 0) == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 12);
}

TEST_CASE("simulate with flows") {
  CHECK(run("simulate " + fixture_path("sys2") + " --flow outflow --horizon 1 --points 3").code == 0);
  CHECK(run("simulate " + fixture_path("sys1") + " --flow cfstr --q 0.5 --feed 1 --horizon 1 --points 3").code == 0);
  CHECK(run("simulate " + fixture_path("sys1") + " --x0 1,2").code == 2);
}

TEST_CASE("verify runs the batteries") {
  const Run one = run("verify " + fixture_path("sys1") + " --seed 3 --pairs 5 --samples 20 --starts 10");
  CHECK(one.code == 0);
  CHECK(one.out.find("sys1.rxn") != std::string::npos);
  const Run all = run("verify --all-fixtures --fixtures-dir " + std::string(CRNSR_FIXTURES_DIR) +
                      " --seed 3 --pairs 5 --samples 20 --starts 10");
  CHECK(all.code == 0);
  const Run json = run("verify " + fixture_path("sys2") + " --format json --starts 10");
  CHECK(json.code == 0);
  CHECK(json.out.find("\"battery\": \"equilibria\"") != std::string::npos);
}
