#pragma once

#include "qss/locc.hpp"
#include "qss/protocol.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qss::experiments {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses a protocol config document. `context` names the source (file path)
// for error messages.
protocol::ProtocolConfig parse_config(const nlohmann::json& doc, const std::string& context);
protocol::ProtocolConfig load_config(const std::string& path);

struct StatsSummary {
  std::string variant;
  std::string coalition;
  int trials = 0;
  std::uint64_t seed = 0;
  int aborts = 0;
  double abort_rate = 0.0;
  double detection_rate = 0.0;  // abort rate when an Eve model is active
  long bits_total = 0;
  long bits_correct = 0;
  double reconstruction_accuracy = 1.0;  // vacuously 1 when no bits decoded
  long checks_total = 0;
  long checks_passed = 0;
  // setting label -> (passed, total), accumulated over all trials
  std::map<std::string, std::pair<long, long>> setting_pass;
};

// Runs `trials` sessions with per-trial seeds derived from master_seed by
// index. When transcript_out is given, every event of every session is
// written as one JSON line with an added "trial" field. The aggregates are
// recounted from the transcripts; a mismatch throws.
StatsSummary run_protocol_batch(const protocol::ProtocolConfig& base, int trials,
                                std::uint64_t master_seed, std::ostream* transcript_out);

// Fixed-precision tab-separated summary, one header and one data row.
std::string summary_tsv(const StatsSummary& summary);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

WilsonInterval wilson_interval(long successes, long trials, double z = 1.96);

struct AttackSweepRow {
  double tap_probability = 0.0;
  int u = 0;
  int trials = 0;
  int detected = 0;
  double rate = 0.0;
  WilsonInterval interval;
};

// Detection rate of the configured scheme under intercept-resend at each tap
// probability, with Wilson confidence intervals.
std::vector<AttackSweepRow> attack_sweep(const protocol::ProtocolConfig& base,
                                         const std::vector<double>& taps, int trials,
                                         std::uint64_t master_seed);

std::string attack_sweep_tsv(const std::vector<AttackSweepRow>& rows);

// One JSON line per threshold check plus a trailing summary line.
std::string threshold_report_jsonl(const locc::ThresholdReport& report);

}  // namespace qss::experiments
