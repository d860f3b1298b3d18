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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "counterpoint/core/clock.hpp"
#include "counterpoint/core/conversation.hpp"
#include "counterpoint/core/document.hpp"
#include "counterpoint/llm/gateway.hpp"

namespace counterpoint::debate {

enum class Feedback { None, Up, Down };
enum class Status { Active, Closed };
enum class EventKind { Open, UserTurn, BotTurn, Feedback, Regenerate, Close };

std::string_view to_string(Feedback feedback);
std::string_view to_string(Status status);
std::string_view to_string(EventKind kind);
Feedback feedback_from_string(std::string_view name);
Status status_from_string(std::string_view name);
EventKind event_kind_from_string(std::string_view name);

struct DebateTurn {
  Role role = Role::User;
  std::string text;
  std::int64_t timestamp_ms = 0;
  Feedback feedback = Feedback::None;  // bot turns only
  int regeneration_count = 0;
  std::vector<std::string> audit;  // texts replaced by regeneration, oldest first

  bool operator==(const DebateTurn&) const = default;
};

// One append-only record. Which fields are meaningful depends on `kind`:
//   Open        session_id, doc_id
//   UserTurn    text
//   BotTurn     text
//   Feedback    turn, feedback
//   Regenerate  turn, text
//   Close       -
// `turn` is 1-based, matching how turns are addressed in the API.
struct DebateEvent {
  EventKind kind = EventKind::Open;
  std::int64_t timestamp_ms = 0;
  std::string session_id;
  std::string doc_id;
  std::size_t turn = 0;
  std::string text;
  Feedback feedback = Feedback::None;

  bool operator==(const DebateEvent&) const = default;
};

struct DebateSession {
  std::string session_id;
  std::string doc_id;
  // The reader's opening argument; the bot argues against it for the whole
  // session.
  std::string position;
  std::vector<DebateTurn> turns;
  Status status = Status::Active;
  std::vector<DebateEvent> events;

  bool operator==(const DebateSession&) const = default;
};

struct DebateOptions {
  std::size_t history_turns = 8;
  int max_regens = 3;
  std::size_t article_max_code_points = 4000;
};

// Applies one event with full validation. Live operations go through here
// too, so a replayed log always lands on the same state. Throws
// CorruptArtifact for an event that does not fit the session.
void apply(DebateSession& session, const DebateEvent& event, const DebateOptions& options = {});

// Rebuilds a session from its event log.
DebateSession replay(const std::vector<DebateEvent>& events, const DebateOptions& options = {});

// Turn 1 is the reader's argument, turn 2 the rebuttal. An empty session_id
// is derived from the document, the argument and the clock.
DebateSession open_debate(const Document& doc, const std::string& opening_argument, const llm::Gateway& gateway,
                          const DebateOptions& options = {}, const Clock& clock = system_clock(),
                          std::string session_id = {});

// Throws SessionClosed on a closed session.
DebateSession rebut(const Document& doc, DebateSession session, const std::string& user_message,
                    const llm::Gateway& gateway, const DebateOptions& options = {},
                    const Clock& clock = system_clock());

// Up records the reaction without calling the provider. Down regenerates the
// turn in place; the new text must differ from the current text and from
// every audited text. One extra attempt is made on a duplicate before
// DuplicateRegeneration is raised. Throws NotABotTurn and
// RegenerationLimitExceeded.
DebateSession give_feedback(const Document& doc, DebateSession session, std::size_t turn, Feedback thumbs,
                            const llm::Gateway& gateway, const DebateOptions& options = {},
                            const Clock& clock = system_clock());

DebateSession close_debate(DebateSession session, const Clock& clock = system_clock());

// Turns [end - window, end) rendered as "Reader: ..." / "You: ..." lines.
std::string render_history(const std::vector<DebateTurn>& turns, std::size_t end, std::size_t window);

}  // namespace counterpoint::debate
