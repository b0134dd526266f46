#include "qss/protocol.hpp"

#include "qss/locc.hpp"

#include <algorithm>
#include <numeric>

namespace qss::protocol {

namespace {

std::string party_name(const ProtocolConfig& config, int party) {
  if (party > config.variant.num_players()) return "dealer";
  return "player:" + std::to_string(party);
}

// The dealer's extra kn qubit is her own; events about it stay dealer-private.
Visibility party_visibility(const ProtocolConfig& config, int party) {
  if (party > config.variant.num_players()) return Visibility::dealer();
  return Visibility::player_only(party);
}

std::vector<int> identity_permutation(int count) {
  std::vector<int> perm(count);
  std::iota(perm.begin(), perm.end(), 1);
  return perm;
}

int balanced_label(const SchemeVariant& variant) {
  if (variant.kind != SchemeKind::kn) return -1;
  const int nq = variant.num_qubits();
  if (nq % 2 != 0) return -1;
  if (variant.member_weight(PairMember::first) == nq / 2) return 0;
  if (variant.member_weight(PairMember::second) == nq / 2) return 1;
  return -1;
}

int bit_of(PairMember member) { return member == PairMember::first ? 0 : 1; }

}  // namespace

EveModel EveModel::intercept_resend_z(double tap_probability, std::vector<int> tapped_players) {
  EveModel model;
  model.kind = Kind::intercept_resend_z;
  model.tap_probability = tap_probability;
  model.tapped_players = std::move(tapped_players);
  return model;
}

bool EveModel::taps(int player) const {
  if (kind == Kind::none || tap_probability <= 0.0) return false;
  if (tapped_players.empty()) return true;
  return std::find(tapped_players.begin(), tapped_players.end(), player) !=
         tapped_players.end();
}

void EveModel::validate(int num_players) const {
  if (tap_probability < 0.0 || tap_probability > 1.0) {
    throw std::invalid_argument("EveModel: tap probability must be in [0,1]");
  }
  for (int p : tapped_players) {
    if (p < 1 || p > num_players) {
      throw std::invalid_argument("EveModel: tapped player out of range");
    }
  }
}

int ProtocolConfig::resolved_checks() const {
  if (num_checks > 0) return num_checks;
  return std::max(4, num_runs / 4);
}

std::vector<int> ProtocolConfig::resolved_coalition() const {
  if (!coalition.empty()) return coalition;
  switch (variant.kind) {
    case SchemeKind::nn: return identity_permutation(variant.n);
    case SchemeKind::two_n: return {1, variant.r + 1};
    case SchemeKind::kn: return identity_permutation(variant.k);
  }
  throw std::logic_error("resolved_coalition: bad kind");
}

void ProtocolConfig::validate() const {
  variant.validate();
  if (num_runs <= variant.n) throw std::invalid_argument("ProtocolConfig: need L > n");
  const int u = resolved_checks();
  if (u < 1 || u >= num_runs) throw std::invalid_argument("ProtocolConfig: need 1 <= u < L");
  if (num_runs - u < static_cast<int>(secret_bits.size())) {
    throw std::invalid_argument("ProtocolConfig: need L - u >= secret bit count");
  }
  for (int b : secret_bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("ProtocolConfig: secret bits must be 0/1");
  }
  eve.validate(variant.num_players());
  if (!coalition.empty()) {
    locc::PartySubset subset{coalition};
    subset.validate(variant.num_players());
  }
}

int party_count(const SchemeVariant& variant) {
  return variant.num_players() + (variant.kn_uses_dealer_qubit() ? 1 : 0);
}

std::vector<RunRecord> dealer_prepare(const ProtocolConfig& config, Rng& rng,
                                      Transcript& transcript) {
  config.validate();
  const auto [first, second] = states::scheme_pair(config.variant);
  const int num_qubits = config.variant.num_qubits();

  std::vector<RunRecord> runs;
  runs.reserve(config.num_runs);
  for (int t = 1; t <= config.num_runs; ++t) {
    const int label = static_cast<int>(rng.next_below(2));
    runs.push_back(RunRecord{t, label, label == 0 ? first : second,
                             std::vector<bool>(num_qubits, false)});
    transcript.append("dealer", "prepare", Visibility::dealer(),
                      {{"run_id", t}, {"label", label}});
  }
  return runs;
}

bool eve_intercept_resend(RunRecord& run, int qubit, int player, int slot,
                          const EveModel& model, Rng& rng, Transcript& transcript) {
  if (model.kind != EveModel::Kind::intercept_resend_z || !model.taps(player)) return false;
  if (!rng.bernoulli(model.tap_probability)) return false;

  auto [outcome, next] = measure_qubit(run.state, qubit, PauliAxis::Z, rng);
  run.state = std::move(next);
  transcript.append("eve", "eve_tap", Visibility::eve(),
                    {{"player", player}, {"slot", slot}, {"outcome", outcome}});
  return true;
}

ShuffleMap shuffle_and_distribute(const ProtocolConfig& config, std::vector<RunRecord>& runs,
                                  Rng& rng, Transcript& transcript) {
  const int parties = party_count(config.variant);
  const int L = config.num_runs;

  ShuffleMap shuffle;
  shuffle.slot_of.resize(parties);
  shuffle.run_at.assign(parties, std::vector<int>(L, 0));
  for (int i = 1; i <= parties; ++i) {
    std::vector<int> perm = identity_permutation(L);
    rng.shuffle(perm);
    for (int t = 1; t <= L; ++t) shuffle.run_at[i - 1][perm[t - 1] - 1] = t;
    transcript.append("dealer", "shuffle", Visibility::dealer(),
                      {{"player", i}, {"perm", perm}});
    shuffle.slot_of[i - 1] = std::move(perm);
  }

  for (int i = 1; i <= parties; ++i) {
    const bool in_flight = i <= config.variant.num_players();
    for (int slot = 1; slot <= L; ++slot) {
      RunRecord& run = runs[shuffle.run(i, slot) - 1];
      if (in_flight) {
        eve_intercept_resend(run, i, i, slot, config.eve, rng, transcript);
      }
      transcript.append("dealer", "deliver", party_visibility(config, i),
                        {{"player", i}, {"slot", slot}});
    }
  }
  for (int i = 1; i <= config.variant.num_players(); ++i) {
    transcript.append(party_name(config, i), "ack", Visibility::public_(), {{"player", i}});
  }
  return shuffle;
}

CheckPlan build_check_lists(const ProtocolConfig& config, const std::vector<RunRecord>& runs,
                            ShuffleMap& shuffle, Rng& rng, Transcript& transcript) {
  const int parties = party_count(config.variant);
  const int L = config.num_runs;
  const int u = config.resolved_checks();

  CheckPlan plan;
  std::vector<int> order = identity_permutation(L);
  rng.shuffle(order);
  plan.check_runs.assign(order.begin(), order.begin() + u);
  std::sort(plan.check_runs.begin(), plan.check_runs.end());

  const bool ghz_scheme = config.variant.kind != SchemeKind::kn;
  const auto family =
      ghz_scheme ? states::ghz_stabilizer_family(config.variant.num_qubits())
                 : std::vector<std::pair<states::StabilizerVector, PauliString>>{};
  const int balanced = balanced_label(config.variant);

  nlohmann::json settings_json = nlohmann::json::array();
  for (int t : plan.check_runs) {
    states::CheckSetting setting;
    if (ghz_scheme) {
      setting = family[rng.next_below(family.size())].first;
    } else if (runs[t - 1].label == balanced) {
      // X and Y relations hold only for the balanced member; other runs get
      // the all-Z check that works for any weight.
      constexpr PauliAxis kAxes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
      setting = kAxes[rng.next_below(3)];
    } else {
      setting = PauliAxis::Z;
    }
    settings_json.push_back(states::setting_label(setting));
    plan.settings.push_back(std::move(setting));
  }
  transcript.append("dealer", "check_plan", Visibility::dealer(),
                    {{"check_runs", plan.check_runs}, {"settings", settings_json}});

  shuffle.check_perm.resize(parties);
  plan.lists.resize(parties);
  for (int i = 1; i <= parties; ++i) {
    std::vector<int> p = identity_permutation(u);
    rng.shuffle(p);

    nlohmann::json entries = nlohmann::json::array();
    for (int j = 0; j < u; ++j) {
      const int s = p[j];
      const int t = plan.check_runs[s - 1];
      CheckListEntry entry;
      if (ghz_scheme) {
        const auto& stab = std::get<states::StabilizerVector>(plan.settings[s - 1]);
        entry.axis = stab.bits[i - 1] ? PauliAxis::Y : PauliAxis::X;
      } else {
        entry.axis = std::get<PauliAxis>(plan.settings[s - 1]);
      }
      entry.slot = shuffle.slot(i, t);
      entries.push_back({{"axis", std::string(1, axis_char(entry.axis))},
                         {"slot", entry.slot}});
      plan.lists[i - 1].push_back(entry);
    }
    shuffle.check_perm[i - 1] = std::move(p);
    transcript.append("dealer", "check_list", party_visibility(config, i),
                      {{"player", i}, {"entries", entries}});
  }
  return plan;
}

std::vector<std::vector<OutcomeReport>> player_measure_checks(const ProtocolConfig& config,
                                                              std::vector<RunRecord>& runs,
                                                              const ShuffleMap& shuffle,
                                                              const CheckPlan& plan, Rng& rng,
                                                              Transcript& transcript) {
  const int parties = party_count(config.variant);
  std::vector<std::vector<OutcomeReport>> reports(parties);

  for (int i = 1; i <= parties; ++i) {
    nlohmann::json entries = nlohmann::json::array();
    for (const CheckListEntry& item : plan.lists[i - 1]) {
      RunRecord& run = runs[shuffle.run(i, item.slot) - 1];
      if (run.measured[i - 1]) {
        throw std::logic_error("player_measure_checks: slot already consumed");
      }
      auto [outcome, next] = measure_qubit(run.state, i, item.axis, rng);
      run.state = std::move(next);
      run.measured[i - 1] = true;
      reports[i - 1].push_back(OutcomeReport{item.slot, outcome});
      entries.push_back({{"slot", item.slot}, {"outcome", outcome}});
    }
    transcript.append(party_name(config, i), "report", party_visibility(config, i),
                      {{"player", i}, {"entries", entries}});
  }
  return reports;
}

VerifyStats dealer_verify(const ProtocolConfig& config, const std::vector<RunRecord>& runs,
                          const CheckPlan& plan, const ShuffleMap& shuffle,
                          const std::vector<std::vector<OutcomeReport>>& reports,
                          Transcript& transcript) {
  const int parties = party_count(config.variant);
  const int u = static_cast<int>(plan.check_runs.size());
  if (static_cast<int>(reports.size()) != parties) {
    throw ProtocolTimeout("dealer_verify: missing party reports");
  }

  // slot -> outcome per party; rejects duplicates and short reports.
  std::vector<std::map<int, int>> outcome_at(parties);
  for (int i = 1; i <= parties; ++i) {
    if (static_cast<int>(reports[i - 1].size()) != u) {
      throw ProtocolTimeout("dealer_verify: report count mismatch for party " +
                            std::to_string(i));
    }
    for (const OutcomeReport& report : reports[i - 1]) {
      if (report.outcome != 1 && report.outcome != -1) {
        throw ProtocolTimeout("dealer_verify: outcome must be +1 or -1");
      }
      if (!outcome_at[i - 1].emplace(report.slot, report.outcome).second) {
        throw ProtocolTimeout("dealer_verify: duplicate slot in report");
      }
    }
  }

  VerifyStats stats;
  stats.checks = u;
  for (int s = 0; s < u; ++s) {
    const int t = plan.check_runs[s];
    int product = 1;
    for (int i = 1; i <= parties; ++i) {
      const auto it = outcome_at[i - 1].find(shuffle.slot(i, t));
      if (it == outcome_at[i - 1].end()) {
        throw ProtocolTimeout("dealer_verify: no outcome reported for a check slot");
      }
      product *= it->second;
    }
    const int expected =
        states::expected_eigenvalue(config.variant, plan.settings[s], runs[t - 1].member());
    const bool pass = product == expected;
    if (!pass) ++stats.mismatches;

    const std::string label = states::setting_label(plan.settings[s]);
    auto& [passed, total] = stats.per_setting[label];
    passed += pass ? 1 : 0;
    total += 1;
    transcript.append("dealer", "verify_detail", Visibility::dealer(),
                      {{"run_id", t},
                       {"setting", label},
                       {"expected", expected},
                       {"product", product},
                       {"pass", pass}});
  }
  stats.pass = stats.mismatches == 0;
  transcript.append("dealer", "verify", Visibility::public_(),
                    {{"result", stats.pass ? "pass" : "abort"},
                     {"checks", stats.checks},
                     {"mismatches", stats.mismatches}});
  return stats;
}

std::vector<Announcement> reveal(const ProtocolConfig& config,
                                 const std::vector<RunRecord>& runs, const ShuffleMap& shuffle,
                                 const CheckPlan& plan, Transcript& transcript) {
  const int players = config.variant.num_players();
  std::vector<bool> used(config.num_runs, false);
  for (int t : plan.check_runs) used[t - 1] = true;

  std::vector<Announcement> announcements;
  for (std::size_t b = 0; b < config.secret_bits.size(); ++b) {
    int chosen = 0;
    for (const RunRecord& run : runs) {
      if (used[run.run_id - 1] || run.label != config.secret_bits[b]) continue;
      chosen = run.run_id;
      break;
    }
    if (chosen == 0) {
      throw ResourceExhausted("reveal: no unmeasured run carries the needed label");
    }
    used[chosen - 1] = true;

    Announcement announcement;
    announcement.bit_index = static_cast<int>(b);
    announcement.run_id = chosen;
    transcript.append("dealer", "reveal_choice", Visibility::dealer(),
                      {{"bit_index", announcement.bit_index}, {"run_id", chosen}});
    for (int i = 1; i <= players; ++i) {
      const int slot = shuffle.slot(i, chosen);
      announcement.slots.push_back(slot);
      transcript.append("dealer", "reveal", Visibility::player_only(i),
                        {{"bit_index", announcement.bit_index},
                         {"player", i},
                         {"slot", slot}});
    }
    announcements.push_back(std::move(announcement));
  }
  return announcements;
}

std::vector<int> reconstruct(const ProtocolConfig& config, const std::vector<int>& coalition,
                             const std::vector<Announcement>& announcements,
                             std::vector<RunRecord>& runs, Rng& rng, Transcript& transcript) {
  const SchemeVariant& variant = config.variant;
  locc::PartySubset subset{coalition};
  subset.validate(variant.num_players());
  std::vector<int> sorted = coalition;
  std::sort(sorted.begin(), sorted.end());

  switch (variant.kind) {
    case SchemeKind::nn:
      if (static_cast<int>(sorted.size()) != variant.n) {
        throw UnauthorizedCoalition("reconstruct: nn scheme needs every player");
      }
      break;
    case SchemeKind::two_n: {
      const bool head = sorted.front() <= variant.r;
      const bool tail = sorted.back() > variant.r;
      if (!head || !tail) {
        throw UnauthorizedCoalition("reconstruct: 2n scheme needs one player per block");
      }
      break;
    }
    case SchemeKind::kn:
      if (static_cast<int>(sorted.size()) < variant.k) {
        throw UnauthorizedCoalition("reconstruct: kn scheme needs at least k players");
      }
      break;
  }

  const auto [first, second] = states::scheme_pair(variant);
  std::vector<int> bits;
  for (const Announcement& announcement : announcements) {
    RunRecord& run = runs[announcement.run_id - 1];
    PairMember guess;
    switch (variant.kind) {
      case SchemeKind::nn:
        guess = locc::distinguish_global(first, second, run.state, rng);
        break;
      case SchemeKind::two_n: {
        int head = 0, tail = 0;
        for (int p : sorted) {
          if (p <= variant.r && head == 0) head = p;
          if (p > variant.r && tail == 0) tail = p;
        }
        guess = locc::distinguish_ghz_two_party(
            run.state, states::GhzPairSpec{variant.n, variant.r}, head, tail, rng);
        break;
      }
      case SchemeKind::kn: {
        states::DickePairSpec spec;
        spec.n = variant.num_qubits();
        spec.m = variant.m;
        spec.r = variant.distance();
        locc::PartySubset measuring{
            std::vector<int>(sorted.begin(), sorted.begin() + variant.k)};
        guess = locc::distinguish_dicke_counting(run.state, spec, measuring, rng);
        break;
      }
      default:
        throw std::logic_error("reconstruct: bad kind");
    }
    const int bit = bit_of(guess);
    bits.push_back(bit);
    transcript.append("coalition", "reconstruct", Visibility::public_(),
                      {{"bit_index", announcement.bit_index},
                       {"coalition", sorted},
                       {"bit", bit}});
  }
  return bits;
}

SessionResult run_session(const ProtocolConfig& config) {
  config.validate();
  Rng rng(config.seed);

  SessionResult result;
  Transcript& transcript = result.transcript;
  transcript.append("dealer", "session_start", Visibility::public_(),
                    {{"variant", config.variant.label()},
                     {"L", config.num_runs},
                     {"u", config.resolved_checks()},
                     {"players", config.variant.num_players()}});

  std::vector<RunRecord> runs = dealer_prepare(config, rng, transcript);
  ShuffleMap shuffle = shuffle_and_distribute(config, runs, rng, transcript);
  CheckPlan plan = build_check_lists(config, runs, shuffle, rng, transcript);
  const auto reports = player_measure_checks(config, runs, shuffle, plan, rng, transcript);
  result.verify = dealer_verify(config, runs, plan, shuffle, reports, transcript);

  if (!result.verify.pass) {
    result.aborted = true;
    result.eve_detected = config.eve.kind != EveModel::Kind::none;
    transcript.append("dealer", "session_end", Visibility::public_(), {{"aborted", true}});
    return result;
  }

  const auto announcements = reveal(config, runs, shuffle, plan, transcript);
  result.reconstructed_bits =
      reconstruct(config, config.resolved_coalition(), announcements, runs, rng, transcript);
  transcript.append("dealer", "session_end", Visibility::public_(), {{"aborted", false}});
  return result;
}

}  // namespace qss::protocol
