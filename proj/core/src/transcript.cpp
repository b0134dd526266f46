#include "qss/transcript.hpp"

#include <sstream>

namespace qss::protocol {

std::string Visibility::str() const {
  switch (kind) {
    case Kind::dealer: return "dealer";
    case Kind::public_: return "public";
    case Kind::player: return "player:" + std::to_string(player);
    case Kind::eve: return "eve";
  }
  return "?";
}

nlohmann::json TranscriptEvent::to_json() const {
  return nlohmann::json{{"seq", seq},
                        {"actor", actor},
                        {"event_kind", event_kind},
                        {"visibility", visibility.str()},
                        {"payload", payload}};
}

std::uint64_t Transcript::append(std::string actor, std::string event_kind,
                                 Visibility visibility, nlohmann::json payload) {
  TranscriptEvent event;
  event.seq = events_.size() + 1;
  event.actor = std::move(actor);
  event.event_kind = std::move(event_kind);
  event.visibility = visibility;
  event.payload = std::move(payload);
  events_.push_back(std::move(event));
  return events_.back().seq;
}

std::vector<TranscriptEvent> Transcript::player_view(int player) const {
  std::vector<TranscriptEvent> view;
  for (const TranscriptEvent& event : events_) {
    if (event.visibility.kind == Visibility::Kind::public_ ||
        (event.visibility.kind == Visibility::Kind::player &&
         event.visibility.player == player)) {
      view.push_back(event);
    }
  }
  return view;
}

void Transcript::write_jsonl(std::ostream& out) const {
  for (const TranscriptEvent& event : events_) {
    out << event.to_json().dump() << '\n';
  }
}

std::string Transcript::to_jsonl() const {
  std::ostringstream out;
  write_jsonl(out);
  return out.str();
}

void collect_keys(const nlohmann::json& doc, std::set<std::string>& keys) {
  if (doc.is_object()) {
    for (const auto& [key, value] : doc.items()) {
      keys.insert(key);
      collect_keys(value, keys);
    }
  } else if (doc.is_array()) {
    for (const auto& value : doc) collect_keys(value, keys);
  }
}

}  // namespace qss::protocol
