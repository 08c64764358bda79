#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pigroup/cli.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = pigroup::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("compute prints the exact sharp invariants") {
  auto r = run_cli({"compute", "--group", "psl2:5", "--pi", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Pr_pi(G)      29/125") != std::string::npos);
  CHECK(r.out.find("|G_pi|        25") != std::string::npos);
  CHECK(r.out.find("threshold     29/125") != std::string::npos);
  CHECK(r.out.find("d_pi(G)       3/5") != std::string::npos);
}

TEST_CASE("compute rejects non-prime pi entries with exit 2") {
  auto r = run_cli({"compute", "--group", "sym:3", "--pi", "4"});
  CHECK(r.code == 2);
  CHECK(r.err.find("4 is not prime") != std::string::npos);
}

TEST_CASE("compute rejects unknown selectors with exit 2") {
  auto r = run_cli({"compute", "--group", "whatever:3"});
  CHECK(r.code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({"compute"}).code == 2);          // missing --group
  CHECK(run_cli({"no-such-command"}).code == 2);
  CHECK(run_cli({}).code == 2);                   // a subcommand is required
}

TEST_CASE("sweep exits 0 on an all-pass run and writes stable reports") {
  const auto tmp1 = std::filesystem::temp_directory_path() / "pigroup_cli_sweep1.jsonl";
  const auto tmp2 = std::filesystem::temp_directory_path() / "pigroup_cli_sweep2.jsonl";
  auto r1 = run_cli({"sweep", "--max-order", "60", "--theorems", "A,C", "--out", tmp1.string(),
                     "--jobs", "1"});
  auto r2 = run_cli({"sweep", "--max-order", "60", "--theorems", "A,C", "--out", tmp2.string(),
                     "--jobs", "3"});
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(read_file(tmp1) == read_file(tmp2));  // byte-identical machine reports
  CHECK(r1.out.find("fail: 0") != std::string::npos);
  std::filesystem::remove(tmp1);
  std::filesystem::remove(tmp2);
}

TEST_CASE("sweep rejects bad theorem ids") {
  CHECK(run_cli({"sweep", "--theorems", "Q7", "--max-order", "10"}).code == 2);
}

TEST_CASE("explore reports candidates informationally with exit 0") {
  auto r = run_cli({"explore", "--max-order", "30", "--jobs", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("no-counterexample") != std::string::npos);
}

TEST_CASE("catalog dump and check round trip") {
  const auto tmp = std::filesystem::temp_directory_path() / "pigroup_cli_catalog.jsonl";
  auto dump = run_cli({"catalog", "--dump", "--out", tmp.string()});
  CHECK(dump.code == 0);
  auto check = run_cli({"catalog", "--check", tmp.string()});
  CHECK(check.code == 0);
  CHECK(check.out.find("entries OK") != std::string::npos);
  auto nothing = run_cli({"catalog"});
  CHECK(nothing.code == 2);
  std::filesystem::remove(tmp);
}

TEST_CASE("PIGROUP_CATALOG sets the default catalog") {
  const auto tmp = std::filesystem::temp_directory_path() / "pigroup_cli_env.jsonl";
  {
    std::ofstream f(tmp);
    f << R"json({"id":"tiny","degree":3,"gens":["(1,2,3)"],"order":3})json" << "\n";
  }
  setenv("PIGROUP_CATALOG", tmp.string().c_str(), 1);
  auto r = run_cli({"sweep", "--theorems", "A", "--jobs", "1"});
  unsetenv("PIGROUP_CATALOG");
  CHECK(r.code == 0);
  CHECK(r.out.find("reports: 1 ") != std::string::npos);
  std::filesystem::remove(tmp);
}

TEST_CASE("csv report format") {
  const auto tmp = std::filesystem::temp_directory_path() / "pigroup_cli_sweep.csv";
  auto r = run_cli({"sweep", "--max-order", "24", "--theorems", "GUSTAFSON", "--format", "csv",
                    "--out", tmp.string()});
  CHECK(r.code == 0);
  const std::string content = read_file(tmp);
  CHECK(content.rfind("theorem,group,pi,verdict", 0) == 0);
  CHECK(content.find("GUSTAFSON") != std::string::npos);
  std::filesystem::remove(tmp);
}
