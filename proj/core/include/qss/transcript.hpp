#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace qss::protocol {

// Who may read an event. The dealer sees everything; a player sees public
// events plus those addressed to them; Eve sees only her own records.
struct Visibility {
  enum class Kind { dealer, public_, player, eve };
  Kind kind = Kind::public_;
  int player = 0;  // meaningful for Kind::player

  static Visibility dealer() { return {Kind::dealer, 0}; }
  static Visibility public_() { return {Kind::public_, 0}; }
  static Visibility player_only(int i) { return {Kind::player, i}; }
  static Visibility eve() { return {Kind::eve, 0}; }

  std::string str() const;
};

struct TranscriptEvent {
  std::uint64_t seq = 0;
  std::string actor;
  std::string event_kind;
  Visibility visibility;
  nlohmann::json payload;

  nlohmann::json to_json() const;
};

class Transcript {
 public:
  std::uint64_t append(std::string actor, std::string event_kind, Visibility visibility,
                       nlohmann::json payload);

  const std::vector<TranscriptEvent>& events() const { return events_; }

  // Events player i is allowed to read: public ones and their own.
  std::vector<TranscriptEvent> player_view(int player) const;

  void write_jsonl(std::ostream& out) const;
  std::string to_jsonl() const;

 private:
  std::vector<TranscriptEvent> events_;
};

// Every key appearing anywhere in the document, recursively. Used to assert
// that restricted views are structurally free of dealer-only fields.
void collect_keys(const nlohmann::json& doc, std::set<std::string>& keys);

}  // namespace qss::protocol
