#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "pfaffcheck/cli.hpp"

using namespace pfaffcheck;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, bool tty = false) {
  args.insert(args.begin(), "pfaffcheck");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, tty);
  return {code, out.str(), err.str()};
}

void check_keys(const Json& j) {
  static const std::regex snake("[a-z][a-z0-9_]*");
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      INFO(it.key());
      CHECK(std::regex_match(it.key(), snake));
      check_keys(it.value());
    }
  } else if (j.is_array()) {
    for (const auto& e : j) check_keys(e);
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({"verify", "--case", "ichino"}).code == 0);
  CHECK(run({"verify", "--case", "jacquet-ichino"}).code == 0);
  CHECK(run({"verify", "--case", "diagonal"}).code == 0);
  CHECK(run({"verify", "--case", "rankin-selberg", "--n", "2"}).code == 0);
  CHECK(run({"fiber", "--case", "gross-prasad", "--n", "2", "--trials", "50"}).code == 0);
  CHECK(run({"newton", "--mu", "()", "--n", "2", "--corrected"}).code == 0);
  CHECK(run({"newton", "--mu", "(3,1)", "--n", "4", "--corrected"}).code == 0);

  auto bad = run({"fiber", "--case", "elliptic"});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("unknown case") != std::string::npos);
  CHECK(run({"newton", "--mu", "(1,1,1)", "--n", "2"}).code == 2);
  CHECK(run({"newton", "--mu", "(1,2)", "--n", "4"}).code == 2);
  CHECK(run({"newton", "--mu", "3,1", "--n", "4"}).code == 2);
  CHECK(run({"verify", "--case", "rankin-selberg", "--n", "4"}).code == 2);
  CHECK(run({"verify", "--case", "gross-prasad", "--n", "0"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "--case", "diagonal", "--format", "yaml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  // Uncorrected: the plain identity is false for this partition.
  CHECK(run({"newton", "--mu", "(1)", "--n", "3"}).code == 1);
}

TEST_CASE("fiber reports two orbits over the origin") {
  auto r = run({"fiber", "--case", "friedberg-jacquet", "--n", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  const auto& ex = j["results"]["examples"];
  REQUIRE(!ex.empty());
  CHECK(ex[0]["label"] == "origin");
  CHECK(ex[0]["orbit_count"] == 2);
  CHECK(j["results"]["violations"] == 0);
}

TEST_CASE("JSON shape") {
  for (auto args : std::vector<std::vector<std::string>>{{"verify", "--case", "gross-prasad", "--n", "2"},
                                                         {"fiber", "--case", "rankin-selberg", "--n", "2"},
                                                         {"newton", "--mu", "(2,1)", "--n", "4", "--corrected"}}) {
    args.push_back("--format");
    args.push_back("json");
    auto r = run(args);
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["tool"] == "pfaffcheck");
    CHECK(j["status"] == "pass");
    CHECK(j["command"]["name"] == args[0]);
    CHECK_FALSE(j.contains("duration_seconds"));
    check_keys(j);
    // Byte-identical on a second run.
    CHECK(run(args).out == r.out);
  }
  auto timed = Json::parse(run({"verify", "--case", "diagonal", "--format", "json", "--timing"}).out);
  CHECK(timed["duration_seconds"].is_number());
  auto v = Json::parse(run({"verify", "--case", "rankin-selberg", "--n", "2", "--format", "json"}).out);
  CHECK(v["results"]["verdict"]["status"] == "exact_match");
  CHECK(v["results"]["report"]["aside_groundtruth"] == aside_groundtruth(CaseTag(CaseKind::RankinSelberg, 2)).to_string());
}

TEST_CASE("seed changes the fiber sample") {
  auto a = run({"fiber", "--case", "rankin-selberg", "--n", "2", "--format", "json", "--seed", "1"});
  auto b = run({"fiber", "--case", "rankin-selberg", "--n", "2", "--format", "json", "--seed", "2"});
  CHECK(a.code == 0);
  CHECK(a.out != b.out);
}

TEST_CASE("output file") {
  auto path = fs::temp_directory_path() / "pfaffcheck_cli_output.json";
  fs::remove(path);
  auto r = run({"verify", "--case", "odd-gl", "--n", "2", "--format", "json", "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path) == run({"verify", "--case", "odd-gl", "--n", "2", "--format", "json"}).out);
  fs::remove(path);
  CHECK(run({"verify", "--case", "odd-gl", "--output", "/nonexistent-dir/x.json"}).code == 2);
}

TEST_CASE("color only on a terminal without NO_COLOR") {
  ::unsetenv("NO_COLOR");
  CHECK(run({"verify", "--case", "diagonal"}, true).out.find("\033[") != std::string::npos);
  CHECK(run({"verify", "--case", "diagonal"}, false).out.find("\033[") == std::string::npos);
  CHECK(run({"verify", "--case", "diagonal", "--format", "json"}, true).out.find("\033[") == std::string::npos);
  ::setenv("NO_COLOR", "1", 1);
  CHECK(run({"verify", "--case", "diagonal"}, true).out.find("\033[") == std::string::npos);
  ::unsetenv("NO_COLOR");
}

TEST_CASE("golden files") {
  auto results = cli::check_fixtures(PFAFFCHECK_FIXTURES_DIR);
  CHECK(results.size() == 2 * acceptance_grid().size());
  for (const auto& r : results) {
    INFO(r.file << "\n" << r.diff);
    CHECK(r.ok);
  }
}

TEST_CASE("corrupted golden file") {
  auto dir = fs::temp_directory_path() / "pfaffcheck_fixtures_corrupt";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::copy_file(fs::path(PFAFFCHECK_FIXTURES_DIR) / "verify_jacquet-ichino_n1.json", dir / "verify_jacquet-ichino_n1.json");
  std::string text = slurp(dir / "verify_jacquet-ichino_n1.json");
  text.replace(text.find("exact_match"), 11, "mismatch");
  std::ofstream(dir / "verify_jacquet-ichino_n1.json", std::ios::binary) << text;

  auto results = cli::check_fixtures(dir.string());
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].ok);
  CHECK(results[0].diff.find("- ") != std::string::npos);
  CHECK(results[0].diff.find("+ ") != std::string::npos);

  auto r = run({"selftest", "--fixtures", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("golden file verify_jacquet-ichino_n1.json") != std::string::npos);
  CHECK(r.out.find("\"status\": \"mismatch\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("line diff") {
  CHECK(cli::line_diff("a\nb\nc\n", "a\nb\nc\n").empty());
  CHECK(cli::line_diff("a\nb\nc\n", "a\nx\nc\n") == "@2 + x\n@2 - b\n");
}

TEST_CASE("process exit status") {
  const std::string bin = PFAFFCHECK_BINARY;
  auto status = [&](const std::string& args) {
    int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("verify --case ichino") == 0);
  CHECK(status("fiber --case nonsense") == 2);
  CHECK(status("newton --mu '(1,1,1)' --n 2") == 2);
  CHECK(status("newton --mu '(1)' --n 3") == 1);
}
