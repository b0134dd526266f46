// End-to-end checks of the installed command line binary. The test runner
// passes its path through the QSS_BIN environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

std::string binary_path() {
  const char* path = std::getenv("QSS_BIN");
  REQUIRE_MESSAGE(path != nullptr, "QSS_BIN must point at the CLI binary");
  return path;
}

int run_cli(const std::string& args, const std::string& stdout_path,
            const std::string& stderr_path = "/dev/null") {
  const std::string command =
      "\"" + binary_path() + "\" " + args + " > " + stdout_path + " 2> " + stderr_path;
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), (path + " should exist"));
  std::ostringstream content;
  content << in.rdbuf();
  return content.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

int line_count(const std::string& text) {
  int count = 0;
  for (char c : text) count += c == '\n' ? 1 : 0;
  return count;
}

constexpr const char* kHonestConfig = R"({
  "variant": {"kind": "nn", "n": 3},
  "L": 16,
  "u": 4,
  "secret_bits": "01",
  "seed": 5
})";

constexpr const char* kSweepConfig = R"({
  "variant": {"kind": "nn", "n": 3},
  "L": 12,
  "u": 4
})";

// Valid shape, but four checks leave too few runs to cover the secret's
// labels in most seedings, so some session exhausts the pool.
constexpr const char* kStarvedConfig = R"({
  "variant": {"kind": "nn", "n": 2},
  "L": 6,
  "u": 4,
  "secret_bits": "00"
})";

}  // namespace

TEST_CASE("verify-theorems sweeps clean and writes a report") {
  CHECK(run_cli("verify-theorems --n-max 3 --out cli_thresholds.jsonl",
                "cli_verify.out") == 0);

  const std::string stdout_text = read_file("cli_verify.out");
  CHECK(stdout_text.find("0 violation(s)") != std::string::npos);

  const std::string report = read_file("cli_thresholds.jsonl");
  CHECK(line_count(report) >= 2);
  CHECK(report.find("\"all_ok\":true") != std::string::npos);

  std::remove("cli_verify.out");
  std::remove("cli_thresholds.jsonl");
}

TEST_CASE("run-protocol emits transcripts and a summary, reproducibly") {
  write_file("cli_honest.json", kHonestConfig);

  CHECK(run_cli("run-protocol --config cli_honest.json --trials 5 --seed 11 "
                "--out cli_a.jsonl",
                "cli_a.out") == 0);
  CHECK(run_cli("run-protocol --config cli_honest.json --trials 5 --seed 11 "
                "--out cli_b.jsonl",
                "cli_b.out") == 0);

  const std::string summary = read_file("cli_a.jsonl.summary.tsv");
  CHECK(line_count(summary) == 2);
  CHECK(summary.find("nn(n=3)") != std::string::npos);
  CHECK(summary.find("\t1.000000\t") != std::string::npos);

  CHECK(read_file("cli_a.jsonl") == read_file("cli_b.jsonl"));
  CHECK(summary == read_file("cli_b.jsonl.summary.tsv"));
  CHECK(read_file("cli_a.out") == read_file("cli_b.out"));
  CHECK(read_file("cli_a.out") == summary);

  CHECK(line_count(read_file("cli_a.jsonl")) > 5);

  for (const char* path : {"cli_honest.json", "cli_a.jsonl", "cli_b.jsonl",
                           "cli_a.jsonl.summary.tsv", "cli_b.jsonl.summary.tsv", "cli_a.out",
                           "cli_b.out"}) {
    std::remove(path);
  }
}

TEST_CASE("attack-sweep reports a zero floor and a detected full tap") {
  write_file("cli_sweep.json", kSweepConfig);

  CHECK(run_cli("attack-sweep --config cli_sweep.json --taps 0,1 --trials 40 --seed 3 "
                "--out cli_sweep.tsv",
                "cli_sweep.out") == 0);

  const std::string table = read_file("cli_sweep.tsv");
  CHECK(table == read_file("cli_sweep.out"));
  CHECK(line_count(table) == 3);

  std::istringstream lines(table);
  std::string header;
  std::string zero_row;
  std::string full_row;
  std::getline(lines, header);
  std::getline(lines, zero_row);
  std::getline(lines, full_row);
  CHECK(zero_row.rfind("0.000000\t4\t40\t0\t0.000000", 0) == 0);
  CHECK(full_row.rfind("1.000000\t4\t40\t", 0) == 0);

  std::remove("cli_sweep.json");
  std::remove("cli_sweep.tsv");
  std::remove("cli_sweep.out");
}

TEST_CASE("usage problems exit with code 2") {
  CHECK(run_cli("run-protocol --config cli_missing.json", "cli_u.out") == 2);

  write_file("cli_broken.json", "{ not json");
  CHECK(run_cli("run-protocol --config cli_broken.json", "cli_u.out") == 2);

  write_file("cli_semantic.json", R"({"variant": {"kind": "nn", "n": 3}, "L": 3})");
  CHECK(run_cli("run-protocol --config cli_semantic.json", "cli_u.out") == 2);

  CHECK(run_cli("verify-theorems --n-max 99", "cli_u.out") == 2);
  CHECK(run_cli("--bogus-flag", "cli_u.out") == 2);
  CHECK(run_cli("", "cli_u.out") == 2);
  CHECK(run_cli("no-such-command", "cli_u.out") == 2);

  write_file("cli_sweep2.json", kSweepConfig);
  CHECK(run_cli("attack-sweep --config cli_sweep2.json --taps 0,zebra", "cli_u.out") == 2);

  CHECK(run_cli("--help", "cli_u.out") == 0);
  CHECK(read_file("cli_u.out").find("Usage") != std::string::npos);

  for (const char* path :
       {"cli_broken.json", "cli_semantic.json", "cli_sweep2.json", "cli_u.out"}) {
    std::remove(path);
  }
}

TEST_CASE("runtime failures exit with code 1") {
  write_file("cli_starved.json", kStarvedConfig);
  CHECK(run_cli("run-protocol --config cli_starved.json --trials 30 --seed 2", "cli_r.out",
                "cli_r.err") == 1);
  CHECK(read_file("cli_r.err").find("error:") != std::string::npos);

  std::remove("cli_starved.json");
  std::remove("cli_r.out");
  std::remove("cli_r.err");
}
