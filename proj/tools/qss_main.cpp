// Experiment runner: theorem verification sweeps, protocol session batches
// and eavesdropping sweeps. Exit codes: 0 success, 1 theorem or assertion
// violation, 2 usage or config error.

#include "qss/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw qss::experiments::ConfigError(path + ": cannot open for writing");
  return out;
}

int cmd_verify_theorems(int n_max, const std::string& out_path) {
  const qss::locc::ThresholdReport report = qss::locc::verify_threshold_theorems(n_max);
  const std::string jsonl = qss::experiments::threshold_report_jsonl(report);
  if (!out_path.empty()) open_output(out_path) << jsonl;

  std::cout << "checked " << report.checks.size() << " threshold configurations up to n="
            << n_max << ": " << report.violations.size() << " violation(s)\n";
  for (const std::string& violation : report.violations) {
    std::cout << "violation: " << violation << '\n';
  }
  return report.all_ok() ? kExitOk : kExitViolation;
}

int cmd_run_protocol(const std::string& config_path, int trials, std::uint64_t seed,
                     const std::string& out_path) {
  const auto config = qss::experiments::load_config(config_path);

  qss::experiments::StatsSummary summary;
  if (out_path.empty()) {
    summary = qss::experiments::run_protocol_batch(config, trials, seed, nullptr);
  } else {
    std::ofstream transcripts = open_output(out_path);
    summary = qss::experiments::run_protocol_batch(config, trials, seed, &transcripts);
    open_output(out_path + ".summary.tsv") << qss::experiments::summary_tsv(summary);
  }
  std::cout << qss::experiments::summary_tsv(summary);
  return kExitOk;
}

int cmd_attack_sweep(const std::string& config_path, const std::string& taps_arg, int trials,
                     std::uint64_t seed, const std::string& out_path) {
  const auto config = qss::experiments::load_config(config_path);

  std::vector<double> taps;
  std::stringstream stream(taps_arg);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      taps.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw qss::experiments::ConfigError("--taps: cannot parse '" + item + "'");
    }
  }

  const auto rows = qss::experiments::attack_sweep(config, taps, trials, seed);
  const std::string tsv = qss::experiments::attack_sweep_tsv(rows);
  if (!out_path.empty()) open_output(out_path) << tsv;
  std::cout << tsv;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secret-sharing scheme simulator and verification lab"};
  app.require_subcommand(1);

  int n_max = 6;
  int trials = 100;
  std::uint64_t seed = 1;
  std::string config_path;
  std::string out_path;
  std::string taps_arg = "0,0.25,0.5,1.0";

  CLI::App* verify = app.add_subcommand("verify-theorems",
                                        "Sweep the distinguishability threshold theorems");
  verify->add_option("--n-max", n_max, "Largest party count to sweep (<= 8)")
      ->check(CLI::Range(2, 8));
  verify->add_option("--out", out_path, "Write the JSONL report here");

  CLI::App* run = app.add_subcommand("run-protocol", "Run seeded protocol sessions");
  run->add_option("--config", config_path, "Protocol config JSON file")->required();
  run->add_option("--trials", trials, "Session count")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Master seed; per-trial seeds are derived from it");
  run->add_option("--out", out_path,
                  "Write transcripts here (JSONL) and the summary to <out>.summary.tsv");

  CLI::App* sweep = app.add_subcommand("attack-sweep",
                                       "Detection rates under intercept-resend taps");
  sweep->add_option("--config", config_path, "Protocol config JSON file")->required();
  sweep->add_option("--taps", taps_arg, "Comma-separated tap probabilities");
  sweep->add_option("--trials", trials, "Sessions per tap probability")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "Master seed");
  sweep->add_option("--out", out_path, "Write the TSV table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify_theorems(n_max, out_path);
    if (run->parsed()) return cmd_run_protocol(config_path, trials, seed, out_path);
    return cmd_attack_sweep(config_path, taps_arg, trials, seed, out_path);
  } catch (const qss::experiments::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
}
