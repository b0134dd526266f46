#include "qss/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qss::experiments {

namespace {

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw ConfigError(context + ": " + message);
}

int require_int(const nlohmann::json& doc, const std::string& key, const std::string& context) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    fail(context, "missing or non-integer field '" + key + "'");
  }
  return doc[key].get<int>();
}

std::vector<int> parse_secret_bits(const nlohmann::json& value, const std::string& context) {
  std::vector<int> bits;
  if (value.is_string()) {
    for (char c : value.get<std::string>()) {
      if (c != '0' && c != '1') fail(context, "secret_bits must contain only 0/1");
      bits.push_back(c - '0');
    }
    return bits;
  }
  if (value.is_array()) {
    for (const auto& item : value) {
      if (!item.is_number_integer()) fail(context, "secret_bits entries must be integers");
      bits.push_back(item.get<int>());
    }
    return bits;
  }
  fail(context, "secret_bits must be a string or array");
}

SchemeVariant parse_variant(const nlohmann::json& doc, const std::string& context) {
  if (!doc.contains("variant") || !doc["variant"].is_object()) {
    fail(context, "missing 'variant' object");
  }
  const nlohmann::json& v = doc["variant"];
  if (!v.contains("kind") || !v["kind"].is_string()) fail(context, "variant needs a 'kind'");
  const std::string kind = v["kind"].get<std::string>();
  const int n = require_int(v, "n", context);
  try {
    if (kind == "nn") return SchemeVariant::nn(n);
    if (kind == "2n") return SchemeVariant::restricted_2n(n, require_int(v, "r", context));
    if (kind == "kn") {
      return SchemeVariant::kn(n, require_int(v, "k", context), require_int(v, "m", context));
    }
  } catch (const std::invalid_argument& e) {
    fail(context, e.what());
  }
  fail(context, "variant kind must be one of nn, 2n, kn");
}

protocol::EveModel parse_eve(const nlohmann::json& doc, const std::string& context) {
  if (!doc.contains("eve")) return protocol::EveModel::none();
  const nlohmann::json& e = doc["eve"];
  if (!e.is_object() || !e.contains("model") || !e["model"].is_string()) {
    fail(context, "eve must be an object with a 'model'");
  }
  const std::string model = e["model"].get<std::string>();
  if (model == "none") return protocol::EveModel::none();
  if (model != "intercept_resend_z") fail(context, "unknown eve model '" + model + "'");

  double tap = 1.0;
  if (e.contains("tap_probability")) {
    if (!e["tap_probability"].is_number()) fail(context, "tap_probability must be a number");
    tap = e["tap_probability"].get<double>();
  }
  std::vector<int> players;
  if (e.contains("players")) {
    if (!e["players"].is_array()) fail(context, "eve players must be an array");
    for (const auto& p : e["players"]) players.push_back(p.get<int>());
  }
  return protocol::EveModel::intercept_resend_z(tap, std::move(players));
}

}  // namespace

protocol::ProtocolConfig parse_config(const nlohmann::json& doc, const std::string& context) {
  if (!doc.is_object()) fail(context, "config root must be an object");
  protocol::ProtocolConfig config;
  config.variant = parse_variant(doc, context);
  config.num_runs = require_int(doc, "L", context);
  if (doc.contains("u")) config.num_checks = require_int(doc, "u", context);
  if (doc.contains("secret_bits")) {
    config.secret_bits = parse_secret_bits(doc["secret_bits"], context);
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      fail(context, "seed must be an integer");
    }
    config.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("coalition")) {
    if (!doc["coalition"].is_array()) fail(context, "coalition must be an array");
    for (const auto& p : doc["coalition"]) config.coalition.push_back(p.get<int>());
  }
  config.eve = parse_eve(doc, context);
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    fail(context, e.what());
  }
  return config;
}

protocol::ProtocolConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc, path);
}

StatsSummary run_protocol_batch(const protocol::ProtocolConfig& base, int trials,
                                std::uint64_t master_seed, std::ostream* transcript_out) {
  if (trials < 1) throw std::invalid_argument("run_protocol_batch: need trials >= 1");
  base.validate();

  StatsSummary summary;
  summary.variant = base.variant.label();
  {
    std::string joined;
    for (int p : base.resolved_coalition()) {
      if (!joined.empty()) joined += ",";
      joined += std::to_string(p);
    }
    summary.coalition = joined;
  }
  summary.trials = trials;
  summary.seed = master_seed;

  // Recounted independently from the transcripts; must match the aggregates.
  long recount_aborts = 0;
  long recount_bits = 0;
  long recount_correct = 0;

  for (int trial = 0; trial < trials; ++trial) {
    protocol::ProtocolConfig config = base;
    config.seed = Rng::derive_seed(master_seed, static_cast<std::uint64_t>(trial));
    const protocol::SessionResult result = protocol::run_session(config);

    if (result.aborted) ++summary.aborts;
    summary.checks_total += result.verify.checks;
    summary.checks_passed += result.verify.checks - result.verify.mismatches;
    for (const auto& [label, counts] : result.verify.per_setting) {
      auto& [passed, total] = summary.setting_pass[label];
      passed += counts.first;
      total += counts.second;
    }
    if (!result.aborted) {
      summary.bits_total += static_cast<long>(result.reconstructed_bits.size());
      for (std::size_t b = 0; b < result.reconstructed_bits.size(); ++b) {
        if (result.reconstructed_bits[b] == base.secret_bits[b]) ++summary.bits_correct;
      }
    }

    for (const protocol::TranscriptEvent& event : result.transcript.events()) {
      if (event.event_kind == "session_end" && event.payload.value("aborted", false)) {
        ++recount_aborts;
      }
      if (event.event_kind == "reconstruct") {
        ++recount_bits;
        const int index = event.payload.at("bit_index").get<int>();
        if (event.payload.at("bit").get<int>() == base.secret_bits.at(index)) {
          ++recount_correct;
        }
      }
      if (transcript_out != nullptr) {
        nlohmann::json line = event.to_json();
        line["trial"] = trial;
        *transcript_out << line.dump() << '\n';
      }
    }
  }

  if (recount_aborts != summary.aborts || recount_bits != summary.bits_total ||
      recount_correct != summary.bits_correct) {
    throw std::logic_error("run_protocol_batch: transcript recount disagrees with aggregates");
  }

  summary.abort_rate = static_cast<double>(summary.aborts) / trials;
  summary.detection_rate =
      base.eve.kind == protocol::EveModel::Kind::none ? 0.0 : summary.abort_rate;
  summary.reconstruction_accuracy =
      summary.bits_total == 0
          ? 1.0
          : static_cast<double>(summary.bits_correct) / static_cast<double>(summary.bits_total);
  return summary;
}

std::string summary_tsv(const StatsSummary& summary) {
  std::ostringstream out;
  out << "variant\tcoalition\ttrials\tseed\taborts\tabort_rate\tdetection_rate\t"
         "bits_total\tbits_correct\treconstruction_accuracy\tchecks_total\tchecks_passed\t"
         "setting_pass_rates\n";
  out << summary.variant << '\t' << summary.coalition << '\t' << summary.trials << '\t'
      << summary.seed << '\t' << summary.aborts << '\t' << fixed6(summary.abort_rate) << '\t'
      << fixed6(summary.detection_rate) << '\t' << summary.bits_total << '\t'
      << summary.bits_correct << '\t' << fixed6(summary.reconstruction_accuracy) << '\t'
      << summary.checks_total << '\t' << summary.checks_passed << '\t';
  bool first = true;
  for (const auto& [label, counts] : summary.setting_pass) {
    if (!first) out << ';';
    const double rate =
        counts.second == 0 ? 1.0 : static_cast<double>(counts.first) / counts.second;
    out << label << '=' << fixed6(rate);
    first = false;
  }
  if (summary.setting_pass.empty()) out << '-';
  out << '\n';
  return out.str();
}

WilsonInterval wilson_interval(long successes, long trials, double z) {
  if (trials <= 0) throw std::invalid_argument("wilson_interval: need trials > 0");
  if (successes < 0 || successes > trials) {
    throw std::invalid_argument("wilson_interval: successes out of range");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double margin = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - margin), std::min(1.0, center + margin)};
}

std::vector<AttackSweepRow> attack_sweep(const protocol::ProtocolConfig& base,
                                         const std::vector<double>& taps, int trials,
                                         std::uint64_t master_seed) {
  if (taps.empty()) throw std::invalid_argument("attack_sweep: empty tap list");
  std::vector<AttackSweepRow> rows;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (taps[i] < 0.0 || taps[i] > 1.0) {
      throw std::invalid_argument("attack_sweep: tap probability out of [0,1]");
    }
    protocol::ProtocolConfig config = base;
    config.eve = taps[i] == 0.0
                     ? protocol::EveModel::none()
                     : protocol::EveModel::intercept_resend_z(taps[i], base.eve.tapped_players);

    const StatsSummary summary = run_protocol_batch(
        config, trials, Rng::derive_seed(master_seed, static_cast<std::uint64_t>(i)), nullptr);

    AttackSweepRow row;
    row.tap_probability = taps[i];
    row.u = config.resolved_checks();
    row.trials = trials;
    row.detected = summary.aborts;
    row.rate = summary.abort_rate;
    row.interval = wilson_interval(summary.aborts, trials);
    rows.push_back(row);
  }
  return rows;
}

std::string attack_sweep_tsv(const std::vector<AttackSweepRow>& rows) {
  std::ostringstream out;
  out << "tap_probability\tu\ttrials\tdetected\tdetection_rate\twilson_lo\twilson_hi\n";
  for (const AttackSweepRow& row : rows) {
    out << fixed6(row.tap_probability) << '\t' << row.u << '\t' << row.trials << '\t'
        << row.detected << '\t' << fixed6(row.rate) << '\t' << fixed6(row.interval.lo) << '\t'
        << fixed6(row.interval.hi) << '\n';
  }
  return out.str();
}

std::string threshold_report_jsonl(const locc::ThresholdReport& report) {
  std::ostringstream out;
  for (const locc::ThresholdCheck& check : report.checks) {
    out << nlohmann::json{{"family", check.family}, {"n", check.n},
                          {"r", check.r},           {"m", check.m},
                          {"observed", check.observed}, {"expected", check.expected},
                          {"ok", check.ok}}
               .dump()
        << '\n';
  }
  out << nlohmann::json{{"all_ok", report.all_ok()}, {"violations", report.violations}}.dump()
      << '\n';
  return out.str();
}

}  // namespace qss::experiments
