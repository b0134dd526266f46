#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qss/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace qss;
using namespace qss::experiments;
using doctest::Approx;

namespace {

nlohmann::json full_doc() {
  return nlohmann::json{
      {"variant", {{"kind", "2n"}, {"n", 4}, {"r", 2}}},
      {"L", 16},
      {"u", 4},
      {"secret_bits", "01"},
      {"seed", 99},
      {"coalition", {1, 3}},
      {"eve", {{"model", "intercept_resend_z"}, {"tap_probability", 0.25}, {"players", {2}}}},
  };
}

protocol::ProtocolConfig honest_nn3() {
  protocol::ProtocolConfig config;
  config.variant = SchemeVariant::nn(3);
  config.num_runs = 16;
  config.num_checks = 4;
  config.secret_bits = {0, 1};
  return config;
}

}  // namespace

TEST_CASE("parse_config reads every field") {
  const auto config = parse_config(full_doc(), "doc");
  CHECK(config.variant.kind == SchemeKind::two_n);
  CHECK(config.variant.n == 4);
  CHECK(config.variant.r == 2);
  CHECK(config.num_runs == 16);
  CHECK(config.num_checks == 4);
  CHECK(config.secret_bits == std::vector<int>{0, 1});
  CHECK(config.seed == 99);
  CHECK(config.coalition == std::vector<int>{1, 3});
  CHECK(config.eve.kind == protocol::EveModel::Kind::intercept_resend_z);
  CHECK(config.eve.tap_probability == Approx(0.25));
  CHECK(config.eve.tapped_players == std::vector<int>{2});
}

TEST_CASE("parse_config defaults optional fields") {
  const auto config =
      parse_config({{"variant", {{"kind", "nn"}, {"n", 3}}}, {"L", 12}}, "doc");
  CHECK(config.num_checks == 0);
  CHECK(config.resolved_checks() == 4);
  CHECK(config.secret_bits.empty());
  CHECK(config.seed == 0);
  CHECK(config.coalition.empty());
  CHECK(config.eve.kind == protocol::EveModel::Kind::none);

  const auto array_bits = parse_config(
      {{"variant", {{"kind", "nn"}, {"n", 3}}}, {"L", 12}, {"secret_bits", {1, 0, 1}}}, "doc");
  CHECK(array_bits.secret_bits == std::vector<int>{1, 0, 1});
}

TEST_CASE("parse_config rejects malformed documents with the source context") {
  const auto rejects = [](nlohmann::json doc) {
    try {
      parse_config(doc, "bad.json");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).rfind("bad.json: ", 0) == 0);
      return true;
    }
    return false;
  };

  CHECK(rejects(nlohmann::json::array()));
  CHECK(rejects({{"L", 12}}));
  CHECK(rejects({{"variant", {{"kind", "xx"}, {"n", 3}}}, {"L", 12}}));
  CHECK(rejects({{"variant", {{"kind", "2n"}, {"n", 4}}}, {"L", 12}}));
  CHECK(rejects({{"variant", {{"kind", "nn"}, {"n", 3}}}}));
  CHECK(rejects({{"variant", {{"kind", "nn"}, {"n", 3}}}, {"L", "12"}}));
  CHECK(rejects({{"variant", {{"kind", "nn"}, {"n", 3}}}, {"L", 12}, {"secret_bits", "012"}}));
  CHECK(rejects({{"variant", {{"kind", "nn"}, {"n", 3}}}, {"L", 12}, {"secret_bits", 7}}));
  CHECK(rejects({{"variant", {{"kind", "nn"}, {"n", 3}}}, {"L", 12}, {"eve", {{"model", "q"}}}}));
  CHECK(rejects({{"variant", {{"kind", "nn"}, {"n", 3}}}, {"L", 12}, {"coalition", {9}}}));
  // Structurally fine but semantically invalid: L <= n.
  CHECK(rejects({{"variant", {{"kind", "nn"}, {"n", 3}}}, {"L", 3}}));
}

TEST_CASE("load_config reads files and reports open and parse failures") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);

  const std::string path = "test_experiments_config.json";
  {
    std::ofstream out(path);
    out << full_doc().dump();
  }
  const auto config = load_config(path);
  CHECK(config.variant.label() == "2n(n=4,r=2)");

  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("honest batches are clean and recount against their transcripts") {
  const auto config = honest_nn3();
  std::ostringstream transcripts;
  const StatsSummary summary = run_protocol_batch(config, 50, 424242, &transcripts);

  CHECK(summary.variant == "nn(n=3)");
  CHECK(summary.coalition == "1,2,3");
  CHECK(summary.trials == 50);
  CHECK(summary.aborts == 0);
  CHECK(summary.abort_rate == 0.0);
  CHECK(summary.detection_rate == 0.0);
  CHECK(summary.bits_total == 100);
  CHECK(summary.bits_correct == 100);
  CHECK(summary.reconstruction_accuracy == 1.0);
  CHECK(summary.checks_total == 200);
  CHECK(summary.checks_passed == 200);
  long setting_total = 0;
  for (const auto& [label, counts] : summary.setting_pass) {
    CHECK(counts.first == counts.second);
    setting_total += counts.second;
  }
  CHECK(setting_total == 200);

  // Every transcript line is JSON with a trial index.
  std::istringstream lines(transcripts.str());
  std::string line;
  int count = 0;
  int max_trial = -1;
  while (std::getline(lines, line)) {
    const auto doc = nlohmann::json::parse(line);
    REQUIRE(doc.contains("trial"));
    max_trial = std::max(max_trial, doc["trial"].get<int>());
    ++count;
  }
  CHECK(count > 50);
  CHECK(max_trial == 49);
}

TEST_CASE("batches are deterministic in the master seed") {
  const auto config = honest_nn3();
  std::ostringstream first_out;
  std::ostringstream second_out;
  const StatsSummary first = run_protocol_batch(config, 10, 7, &first_out);
  const StatsSummary second = run_protocol_batch(config, 10, 7, &second_out);
  CHECK(summary_tsv(first) == summary_tsv(second));
  CHECK(first_out.str() == second_out.str());

  const StatsSummary other = run_protocol_batch(config, 10, 8, nullptr);
  CHECK(summary_tsv(other) != summary_tsv(first));

  CHECK_THROWS_AS(run_protocol_batch(config, 0, 7, nullptr), std::invalid_argument);
}

TEST_CASE("accuracy is vacuously 1 with no secret bits") {
  auto config = honest_nn3();
  config.secret_bits.clear();
  const StatsSummary summary = run_protocol_batch(config, 5, 13, nullptr);
  CHECK(summary.bits_total == 0);
  CHECK(summary.reconstruction_accuracy == 1.0);
}

TEST_CASE("summary tsv is two fixed-precision lines") {
  const StatsSummary summary = run_protocol_batch(honest_nn3(), 5, 21, nullptr);
  const std::string tsv = summary_tsv(summary);

  std::istringstream lines(tsv);
  std::string header;
  std::string row;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  std::string extra;
  CHECK(!std::getline(lines, extra));

  const auto count_tabs = [](const std::string& s) {
    return std::count(s.begin(), s.end(), '\t');
  };
  CHECK(count_tabs(header) == 12);
  CHECK(count_tabs(row) == 12);
  CHECK(row.find("1.000000") != std::string::npos);

  StatsSummary empty;
  empty.variant = "nn(n=2)";
  empty.coalition = "1,2";
  const std::string placeholder = summary_tsv(empty);
  CHECK(placeholder.find("\t-\n") != std::string::npos);
}

TEST_CASE("wilson intervals match hand-computed values") {
  const WilsonInterval mid = wilson_interval(50, 100);
  CHECK(mid.lo == Approx(0.40383).epsilon(1e-3));
  CHECK(mid.hi == Approx(0.59617).epsilon(1e-3));

  const WilsonInterval none = wilson_interval(0, 20);
  CHECK(none.lo == 0.0);
  CHECK(none.hi == Approx(0.16113).epsilon(1e-3));

  const WilsonInterval all = wilson_interval(20, 20);
  CHECK(all.hi == 1.0);
  CHECK(all.lo == Approx(1.0 - 0.16113).epsilon(1e-2));

  CHECK_THROWS_AS(wilson_interval(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(5, 4), std::invalid_argument);
}

TEST_CASE("attack sweep reproduces the detection curve endpoints") {
  protocol::ProtocolConfig config;
  config.variant = SchemeVariant::nn(3);
  config.num_runs = 12;
  config.num_checks = 4;

  const auto rows = attack_sweep(config, {0.0, 1.0}, 150, 5150);
  REQUIRE(rows.size() == 2);

  CHECK(rows[0].tap_probability == 0.0);
  CHECK(rows[0].detected == 0);
  CHECK(rows[0].rate == 0.0);

  CHECK(rows[1].u == 4);
  CHECK(rows[1].trials == 150);
  CHECK(std::abs(rows[1].rate - 0.9375) < 0.08);
  CHECK(rows[1].interval.lo <= rows[1].rate);
  CHECK(rows[1].rate <= rows[1].interval.hi);

  const std::string tsv = attack_sweep_tsv(rows);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 3);
  CHECK(tsv.find("0.000000\t") != std::string::npos);

  CHECK_THROWS_AS(attack_sweep(config, {}, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(attack_sweep(config, {1.5}, 10, 1), std::invalid_argument);
}

TEST_CASE("threshold report serializes one line per check plus a summary") {
  const auto report = locc::verify_threshold_theorems(3);
  const std::string jsonl = threshold_report_jsonl(report);

  std::istringstream lines(jsonl);
  std::string line;
  std::vector<nlohmann::json> docs;
  while (std::getline(lines, line)) docs.push_back(nlohmann::json::parse(line));

  REQUIRE(docs.size() == report.checks.size() + 1);
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    CHECK(docs[i]["family"].is_string());
    CHECK(docs[i]["ok"].get<bool>());
    CHECK(docs[i]["observed"] == docs[i]["expected"]);
  }
  CHECK(docs.back()["all_ok"].get<bool>());
  CHECK(docs.back()["violations"].empty());
}
