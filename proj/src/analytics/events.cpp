// Copyright 2026 The Counterpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "counterpoint/analytics/events.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "counterpoint/core/files.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::analytics {

namespace {

constexpr std::size_t idx(Feature f) { return static_cast<std::size_t>(f); }

nlohmann::json to_json(const SessionEvent& e) {
  return {{"session_id", e.session_id},
          {"feature", to_string(e.feature)},
          {"kind", to_string(e.kind)},
          {"timestamp_ms", e.timestamp_ms}};
}

}  // namespace

std::string_view to_string(Feature feature) {
  switch (feature) {
    case Feature::Article: return "Article";
    case Feature::Claims: return "Claims";
    case Feature::Counters: return "Counters";
    case Feature::Context: return "Context";
    case Feature::QA: return "QA";
    case Feature::DebateMe: return "DebateMe";
    case Feature::Highlight: return "Highlight";
    case Feature::Idle: return "Idle";
  }
  return "Idle";
}

std::string_view to_string(EventKind kind) { return kind == EventKind::Enter ? "Enter" : "Exit"; }

Feature feature_from_string(std::string_view name) {
  for (Feature f : kAllFeatures) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown feature: " + std::string(name));
}

EventKind event_kind_from_string(std::string_view name) {
  if (name == "Enter") return EventKind::Enter;
  if (name == "Exit") return EventKind::Exit;
  throw Error(ErrorCode::InvalidArgument, "unknown event kind: " + std::string(name));
}

void EventLog::record_event(const SessionEvent& event) {
  if (event.session_id.empty()) throw Error(ErrorCode::InvalidArgument, "event has no session id");
  auto it = sessions_.find(event.session_id);
  const SessionState empty;
  const SessionState& state = it == sessions_.end() ? empty : it->second;
  if (!state.events.empty() && event.timestamp_ms < state.events.back().timestamp_ms) {
    throw Error(ErrorCode::OutOfOrderEvent, "event at " + std::to_string(event.timestamp_ms) + " precedes " +
                                                std::to_string(state.events.back().timestamp_ms) + " in session " +
                                                event.session_id);
  }
  const bool open = state.open[idx(event.feature)];
  if (event.kind == EventKind::Exit && !open) {
    throw Error(ErrorCode::UnmatchedExit,
                "Exit(" + std::string(to_string(event.feature)) + ") without a matching Enter");
  }
  if (event.kind == EventKind::Enter && open) {
    throw Error(ErrorCode::DuplicateEnter, "Enter(" + std::string(to_string(event.feature)) + ") while already open");
  }
  SessionState& target = sessions_[event.session_id];
  target.open[idx(event.feature)] = event.kind == EventKind::Enter;
  target.events.push_back(event);
}

const std::vector<SessionEvent>& EventLog::events(const std::string& session_id) const {
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw Error(ErrorCode::NotFound, "no events for session " + session_id);
  return it->second.events;
}

std::vector<std::string> EventLog::sessions() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

std::string EventLog::to_jsonl() const {
  std::string out;
  for (const auto& [id, _] : sessions_) out += to_jsonl(id);
  return out;
}

std::string EventLog::to_jsonl(const std::string& session_id) const {
  std::string out;
  for (const auto& e : events(session_id)) out += to_json(e).dump() + "\n";
  return out;
}

EventLog EventLog::from_jsonl(std::string_view text) {
  EventLog log;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    SessionEvent e;
    try {
      const auto j = nlohmann::json::parse(line);
      e.session_id = j.at("session_id").get<std::string>();
      e.feature = feature_from_string(j.at("feature").get<std::string>());
      e.kind = event_kind_from_string(j.at("kind").get<std::string>());
      e.timestamp_ms = j.at("timestamp_ms").get<std::int64_t>();
    } catch (const std::exception& ex) {
      throw Error(ErrorCode::ParseError, "event log line " + std::to_string(line_no) + ": " + ex.what());
    }
    log.record_event(e);
  }
  return log;
}

void EventLog::save(const std::filesystem::path& path) const { write_file_atomic(path, to_jsonl()); }

EventLog EventLog::load(const std::filesystem::path& path) { return from_jsonl(read_file(path)); }

FeatureTimeBreakdown time_per_feature(const EventLog& log, const std::string& session_id) {
  if (!log.contains(session_id)) throw Error(ErrorCode::EmptySession, "no events for session " + session_id);
  const auto& events = log.events(session_id);
  const auto first_enter = std::find_if(events.begin(), events.end(),
                                        [](const SessionEvent& e) { return e.kind == EventKind::Enter; });
  const auto last_exit = std::find_if(events.rbegin(), events.rend(),
                                      [](const SessionEvent& e) { return e.kind == EventKind::Exit; });
  if (first_enter == events.end() || last_exit == events.rend()) {
    throw Error(ErrorCode::EmptySession, "session " + session_id + " has no completed Enter/Exit pair");
  }
  const std::size_t begin = static_cast<std::size_t>(first_enter - events.begin());
  const std::size_t end = events.size() - 1 - static_cast<std::size_t>(last_exit - events.rbegin());

  FeatureTimeBreakdown out;
  out.session_id = session_id;
  // Open features with their entry order; the last entry is the innermost.
  std::vector<Feature> open;
  std::array<std::int64_t, kAllFeatures.size()> ms{};
  for (std::size_t i = begin; i < end; ++i) {
    const auto& e = events[i];
    if (e.kind == EventKind::Enter) {
      open.push_back(e.feature);
    } else {
      open.erase(std::find(open.begin(), open.end(), e.feature));
    }
    const std::int64_t width = events[i + 1].timestamp_ms - e.timestamp_ms;
    ms[idx(open.empty() ? Feature::Idle : open.back())] += width;
  }
  const std::int64_t total = events[end].timestamp_ms - events[begin].timestamp_ms;
  out.session_seconds = static_cast<double>(total) / 1000.0;
  for (std::size_t f = 0; f < ms.size(); ++f) {
    out.seconds[f] = static_cast<double>(ms[f]) / 1000.0;
    out.fraction[f] = total > 0 ? static_cast<double>(ms[f]) / static_cast<double>(total) : 0.0;
  }
  if (total == 0) {
    // Zero-length session: the whole (empty) duration belongs to the feature
    // that was entered first so fractions still total 1.
    out.fraction[idx(events[begin].feature)] = 1.0;
  }
  return out;
}

double per_minute_rate(double count, double duration_minutes) {
  if (!(duration_minutes > 0.0) || !std::isfinite(duration_minutes)) {
    throw Error(ErrorCode::NonPositiveDuration, "duration must be positive");
  }
  if (count < 0.0) throw Error(ErrorCode::InvalidArgument, "count must be non-negative");
  return count / duration_minutes;
}

}  // namespace counterpoint::analytics
