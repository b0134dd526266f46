#pragma once

#include "qss/random.hpp"
#include "qss/scheme.hpp"
#include "qss/state.hpp"
#include "qss/states.hpp"
#include "qss/transcript.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qss::protocol {

// No unmeasured run with the label a secret bit needs.
struct ResourceExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A check report is missing or malformed.
struct ProtocolTimeout : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnauthorizedCoalition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EveModel {
  enum class Kind { none, intercept_resend_z };
  Kind kind = Kind::none;
  double tap_probability = 0.0;
  // Players whose incoming qubits Eve may tap; empty means all of them.
  std::vector<int> tapped_players;

  static EveModel none() { return {}; }
  static EveModel intercept_resend_z(double tap_probability,
                                     std::vector<int> tapped_players = {});

  bool taps(int player) const;
  void validate(int num_players) const;
};

struct ProtocolConfig {
  SchemeVariant variant;
  int num_runs = 0;    // L
  int num_checks = 0;  // u; 0 picks the default max(4, L/4)
  std::vector<int> secret_bits;
  std::uint64_t seed = 0;
  EveModel eve;
  // Reconstructing coalition; empty picks the canonical authorized one
  // (nn: everyone, 2n: {1, r+1}, kn: {1..k}).
  std::vector<int> coalition;

  int resolved_checks() const;
  std::vector<int> resolved_coalition() const;
  void validate() const;
};

// One dealt run. The state is the live joint system; measurements collapse
// it in place. measured[q-1] marks qubit q as consumed by its holder.
struct RunRecord {
  int run_id = 0;
  int label = 0;  // 0 = first pair member, 1 = second
  PureState state;
  std::vector<bool> measured;

  PairMember member() const { return label == 0 ? PairMember::first : PairMember::second; }
};

// Dealer-private routing data. Party i receives run t's qubit at local slot
// slot_of[i-1][t-1]; run_at is the inverse. check_perm[i-1] orders party i's
// check list.
struct ShuffleMap {
  std::vector<std::vector<int>> slot_of;
  std::vector<std::vector<int>> run_at;
  std::vector<std::vector<int>> check_perm;

  int slot(int party, int run_id) const { return slot_of[party - 1][run_id - 1]; }
  int run(int party, int slot) const { return run_at[party - 1][slot - 1]; }
};

struct CheckListEntry {
  PauliAxis axis = PauliAxis::I;
  int slot = 0;
};

struct CheckPlan {
  std::vector<int> check_runs;                  // ascending run ids
  std::vector<states::CheckSetting> settings;   // parallel to check_runs
  std::vector<std::vector<CheckListEntry>> lists;  // per party, in p_i order
};

struct OutcomeReport {
  int slot = 0;
  int outcome = 0;  // +1 or -1
};

struct VerifyStats {
  bool pass = false;
  int checks = 0;
  int mismatches = 0;
  // setting label -> (passed, total)
  std::map<std::string, std::pair<int, int>> per_setting;
};

struct Announcement {
  int bit_index = 0;
  int run_id = 0;           // dealer-private
  std::vector<int> slots;   // per real player, index i-1
};

struct SessionResult {
  bool aborted = false;
  bool eve_detected = false;
  std::vector<int> reconstructed_bits;
  VerifyStats verify;
  Transcript transcript;
};

// Number of parties holding qubits: the players, plus the dealer when the
// kn scheme pads odd n with a dealer-held qubit.
int party_count(const SchemeVariant& variant);

// S1: L runs, each label drawn uniformly.
std::vector<RunRecord> dealer_prepare(const ProtocolConfig& config, Rng& rng,
                                      Transcript& transcript);

// S2: per-party uniform permutations, qubit deliveries (through Eve, if
// modeled) and receipt acknowledgements.
ShuffleMap shuffle_and_distribute(const ProtocolConfig& config, std::vector<RunRecord>& runs,
                                  Rng& rng, Transcript& transcript);

// Applies the tap decision to one in-flight qubit. Returns true if Eve
// measured it.
bool eve_intercept_resend(RunRecord& run, int qubit, int player, int slot,
                          const EveModel& model, Rng& rng, Transcript& transcript);

// S3 dealer side: pick u check runs, draw settings, emit per-party lists
// scrambled by private p_i permutations.
CheckPlan build_check_lists(const ProtocolConfig& config, const std::vector<RunRecord>& runs,
                            ShuffleMap& shuffle, Rng& rng, Transcript& transcript);

// S3 player side: measure listed slots in the listed axes. Reports are
// indexed by party.
std::vector<std::vector<OutcomeReport>> player_measure_checks(const ProtocolConfig& config,
                                                              std::vector<RunRecord>& runs,
                                                              const ShuffleMap& shuffle,
                                                              const CheckPlan& plan, Rng& rng,
                                                              Transcript& transcript);

// S4: reassemble per-run outcome products and compare with the eigenvalue
// tables. Any mismatch aborts.
VerifyStats dealer_verify(const ProtocolConfig& config, const std::vector<RunRecord>& runs,
                          const CheckPlan& plan, const ShuffleMap& shuffle,
                          const std::vector<std::vector<OutcomeReport>>& reports,
                          Transcript& transcript);

// S5 dealer side: per secret bit, announce the slots of an unmeasured run
// whose label encodes the bit. Slots only; labels stay private.
std::vector<Announcement> reveal(const ProtocolConfig& config,
                                 const std::vector<RunRecord>& runs, const ShuffleMap& shuffle,
                                 const CheckPlan& plan, Transcript& transcript);

// S5 player side: the coalition runs the distinguishing protocol for the
// variant on each announced run and decodes the bits.
std::vector<int> reconstruct(const ProtocolConfig& config, const std::vector<int>& coalition,
                             const std::vector<Announcement>& announcements,
                             std::vector<RunRecord>& runs, Rng& rng, Transcript& transcript);

// S1-S5 composed. Deterministic for a fixed config.
SessionResult run_session(const ProtocolConfig& config);

}  // namespace qss::protocol
