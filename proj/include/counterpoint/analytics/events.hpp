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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace counterpoint::analytics {

enum class Feature { Article, Claims, Counters, Context, QA, DebateMe, Highlight, Idle };
enum class EventKind { Enter, Exit };

inline constexpr std::array<Feature, 8> kAllFeatures{Feature::Article, Feature::Claims,   Feature::Counters,
                                                     Feature::Context, Feature::QA,       Feature::DebateMe,
                                                     Feature::Highlight, Feature::Idle};

std::string_view to_string(Feature feature);
std::string_view to_string(EventKind kind);
Feature feature_from_string(std::string_view name);
EventKind event_kind_from_string(std::string_view name);

struct SessionEvent {
  std::string session_id;
  Feature feature = Feature::Article;
  EventKind kind = EventKind::Enter;
  std::int64_t timestamp_ms = 0;

  bool operator==(const SessionEvent&) const = default;
};

// Events grouped by session. Not synchronized; the service serializes
// appends per session.
class EventLog {
 public:
  // Throws OutOfOrderEvent when the timestamp precedes the session's last
  // event, UnmatchedExit for an Exit of a feature that is not open, and
  // DuplicateEnter for an Enter of a feature that is already open. The log is
  // unchanged on error.
  void record_event(const SessionEvent& event);

  const std::vector<SessionEvent>& events(const std::string& session_id) const;
  std::vector<std::string> sessions() const;
  bool contains(const std::string& session_id) const { return sessions_.count(session_id) > 0; }

  // One JSON object per line: {"session_id","feature","kind","timestamp_ms"}.
  std::string to_jsonl() const;
  std::string to_jsonl(const std::string& session_id) const;
  // Every line goes through record_event(), so a loaded log satisfies the
  // same invariants. Malformed lines raise ParseError.
  static EventLog from_jsonl(std::string_view text);

  void save(const std::filesystem::path& path) const;
  static EventLog load(const std::filesystem::path& path);

 private:
  struct SessionState {
    std::vector<SessionEvent> events;
    std::array<bool, kAllFeatures.size()> open{};
  };
  std::map<std::string, SessionState, std::less<>> sessions_;
};

struct FeatureTimeBreakdown {
  std::string session_id;
  double session_seconds = 0.0;
  std::array<double, kAllFeatures.size()> seconds{};
  std::array<double, kAllFeatures.size()> fraction{};

  double seconds_of(Feature f) const { return seconds[static_cast<std::size_t>(f)]; }
  double fraction_of(Feature f) const { return fraction[static_cast<std::size_t>(f)]; }
};

// Partitions [first Enter, last Exit] into segments between consecutive event
// timestamps. Each segment goes to the most recently entered feature that is
// still open; segments with nothing open go to Idle. Without overlapping
// features this is the plain sum of Exit - Enter per feature. Throws
// EmptySession when the session has no completed Enter/Exit pair.
FeatureTimeBreakdown time_per_feature(const EventLog& log, const std::string& session_id);

// count / duration_minutes. Throws NonPositiveDuration unless duration > 0.
double per_minute_rate(double count, double duration_minutes);

}  // namespace counterpoint::analytics
