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

#include "counterpoint/debate/debate.hpp"

#include <algorithm>

#include "counterpoint/core/digest.hpp"
#include "counterpoint/core/utf8.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::debate {

namespace {

bool blank(std::string_view s) {
  const auto cps = utf8::decode(s);
  return std::all_of(cps.begin(), cps.end(), utf8::is_whitespace);
}

[[noreturn]] void corrupt(const std::string& why) { throw Error(ErrorCode::CorruptArtifact, "debate log: " + why); }

std::string article_excerpt(const Document& doc, std::size_t limit) {
  if (doc.length() <= limit) return doc.body();
  return std::string(doc.text({0, limit}));
}

bool is_bot_turn(const DebateSession& session, std::size_t turn) {
  return turn >= 1 && turn <= session.turns.size() && session.turns[turn - 1].role == Role::Bot;
}

void require_active(const DebateSession& session) {
  if (session.status == Status::Closed) {
    throw Error(ErrorCode::SessionClosed, "debate session " + session.session_id + " is closed");
  }
}

void require_doc(const Document& doc, const DebateSession& session) {
  if (doc.id() != session.doc_id) throw Error(ErrorCode::InvalidArgument, "session belongs to a different document");
}

std::string rebuttal(const Document& doc, const DebateSession& session, const std::string& key,
                     const llm::Gateway& gateway, const DebateOptions& options) {
  return gateway
      .complete(llm::TemplateId::DebateRebut,
                {{"title", doc.title()},
                 {"position", session.position},
                 {"article", article_excerpt(doc, options.article_max_code_points)},
                 {"history", render_history(session.turns, session.turns.size(), options.history_turns)}},
                short_digest(key))
      .text;
}

}  // namespace

std::string_view to_string(Feedback feedback) {
  switch (feedback) {
    case Feedback::None: return "None";
    case Feedback::Up: return "Up";
    case Feedback::Down: return "Down";
  }
  return "None";
}

std::string_view to_string(Status status) { return status == Status::Active ? "Active" : "Closed"; }

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Open: return "open";
    case EventKind::UserTurn: return "user_turn";
    case EventKind::BotTurn: return "bot_turn";
    case EventKind::Feedback: return "feedback";
    case EventKind::Regenerate: return "regenerate";
    case EventKind::Close: return "close";
  }
  return "open";
}

Feedback feedback_from_string(std::string_view name) {
  for (auto f : {Feedback::None, Feedback::Up, Feedback::Down}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown feedback: " + std::string(name));
}

Status status_from_string(std::string_view name) {
  for (auto s : {Status::Active, Status::Closed}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::ParseError, "unknown session status: " + std::string(name));
}

EventKind event_kind_from_string(std::string_view name) {
  for (auto k : {EventKind::Open, EventKind::UserTurn, EventKind::BotTurn, EventKind::Feedback, EventKind::Regenerate,
                 EventKind::Close}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown debate event: " + std::string(name));
}

std::string render_history(const std::vector<DebateTurn>& turns, std::size_t end, std::size_t window) {
  end = std::min(end, turns.size());
  const std::size_t from = end > window ? end - window : 0;
  std::string out;
  for (std::size_t i = from; i < end; ++i) {
    out += turns[i].role == Role::User ? "Reader: " : "You: ";
    out += turns[i].text;
    out += '\n';
  }
  return out;
}

void apply(DebateSession& s, const DebateEvent& e, const DebateOptions& options) {
  if (e.kind == EventKind::Open) {
    if (!s.events.empty()) corrupt("open must be the first event");
    if (e.session_id.empty() || e.doc_id.empty()) corrupt("open event lacks ids");
    s.session_id = e.session_id;
    s.doc_id = e.doc_id;
    s.events.push_back(e);
    return;
  }
  if (s.events.empty()) corrupt("first event must be open");
  if (e.timestamp_ms < s.events.back().timestamp_ms) corrupt("events out of order");
  switch (e.kind) {
    case EventKind::Open:
      break;
    case EventKind::UserTurn:
    case EventKind::BotTurn: {
      if (s.status == Status::Closed) corrupt("turn after close");
      const Role role = e.kind == EventKind::UserTurn ? Role::User : Role::Bot;
      const Role expected = s.turns.size() % 2 == 0 ? Role::User : Role::Bot;
      if (role != expected) corrupt("turns must alternate starting with the reader");
      if (blank(e.text) && role == Role::User) corrupt("empty reader turn");
      if (s.turns.empty()) s.position = e.text;
      s.turns.push_back({role, e.text, e.timestamp_ms, Feedback::None, 0, {}});
      break;
    }
    case EventKind::Feedback:
      if (!is_bot_turn(s, e.turn)) corrupt("feedback on a non-bot turn");
      if (e.feedback == Feedback::None) corrupt("feedback event without a reaction");
      s.turns[e.turn - 1].feedback = e.feedback;
      break;
    case EventKind::Regenerate: {
      if (!is_bot_turn(s, e.turn)) corrupt("regeneration of a non-bot turn");
      auto& t = s.turns[e.turn - 1];
      if (t.regeneration_count >= options.max_regens) corrupt("regeneration limit exceeded");
      if (e.text == t.text || std::find(t.audit.begin(), t.audit.end(), e.text) != t.audit.end()) {
        corrupt("regenerated text repeats an earlier reply");
      }
      t.audit.push_back(std::move(t.text));
      t.text = e.text;
      ++t.regeneration_count;
      t.feedback = Feedback::Down;
      break;
    }
    case EventKind::Close:
      if (s.status == Status::Closed) corrupt("session closed twice");
      s.status = Status::Closed;
      break;
  }
  s.events.push_back(e);
}

DebateSession replay(const std::vector<DebateEvent>& events, const DebateOptions& options) {
  DebateSession s;
  for (const auto& e : events) apply(s, e, options);
  return s;
}

DebateSession open_debate(const Document& doc, const std::string& opening_argument, const llm::Gateway& gateway,
                          const DebateOptions& options, const Clock& clock, std::string session_id) {
  if (blank(opening_argument)) throw Error(ErrorCode::InvalidArgument, "opening argument is empty");
  const std::int64_t opened = clock();
  if (session_id.empty()) {
    session_id = "d" + short_digest(doc.id() + '\n' + opening_argument + '\n' + std::to_string(opened)).substr(0, 15);
  }
  DebateSession s;
  DebateEvent open;
  open.kind = EventKind::Open;
  open.timestamp_ms = opened;
  open.session_id = session_id;
  open.doc_id = doc.id();
  apply(s, open, options);
  apply(s, {EventKind::UserTurn, opened, {}, {}, 0, opening_argument, Feedback::None}, options);
  const std::string reply = rebuttal(doc, s, opening_argument, gateway, options);
  apply(s, {EventKind::BotTurn, std::max(opened, clock()), {}, {}, 0, reply, Feedback::None}, options);
  return s;
}

DebateSession rebut(const Document& doc, DebateSession session, const std::string& user_message,
                    const llm::Gateway& gateway, const DebateOptions& options, const Clock& clock) {
  require_active(session);
  require_doc(doc, session);
  if (blank(user_message)) throw Error(ErrorCode::InvalidArgument, "message is empty");
  if (session.turns.empty() || session.turns.back().role != Role::Bot) {
    throw Error(ErrorCode::InvalidArgument, "debate is waiting for a rebuttal");
  }
  const std::int64_t last = session.events.back().timestamp_ms;
  const std::int64_t asked = std::max(last, clock());
  // Generate against a scratch copy so a provider failure leaves the session
  // untouched.
  DebateSession next = session;
  apply(next, {EventKind::UserTurn, asked, {}, {}, 0, user_message, Feedback::None}, options);
  const std::string reply = rebuttal(doc, next, user_message, gateway, options);
  apply(next, {EventKind::BotTurn, std::max(asked, clock()), {}, {}, 0, reply, Feedback::None}, options);
  return next;
}

DebateSession give_feedback(const Document& doc, DebateSession session, std::size_t turn, Feedback thumbs,
                            const llm::Gateway& gateway, const DebateOptions& options, const Clock& clock) {
  if (!is_bot_turn(session, turn)) {
    throw Error(ErrorCode::NotABotTurn, "turn " + std::to_string(turn) + " is not a bot turn");
  }
  if (thumbs == Feedback::None) throw Error(ErrorCode::InvalidArgument, "feedback must be Up or Down");
  const std::int64_t now = std::max(session.events.back().timestamp_ms, clock());
  if (thumbs == Feedback::Up) {
    apply(session, {EventKind::Feedback, now, {}, {}, turn, {}, Feedback::Up}, options);
    return session;
  }

  require_doc(doc, session);
  const DebateTurn& target = session.turns[turn - 1];
  if (target.regeneration_count >= options.max_regens) {
    throw Error(ErrorCode::RegenerationLimitExceeded,
                "turn " + std::to_string(turn) + " was already regenerated " +
                    std::to_string(target.regeneration_count) + " times");
  }
  std::vector<std::string> rejected = target.audit;
  rejected.push_back(target.text);
  std::string rejected_text;
  for (std::size_t i = 0; i < rejected.size(); ++i) {
    rejected_text += std::to_string(i + 1) + ". " + rejected[i] + "\n";
  }

  std::string fresh;
  bool unique = false;
  for (int extra = 0; extra < 2 && !unique; ++extra) {
    const int attempt = target.regeneration_count + 1 + extra;
    fresh = gateway
                .complete(llm::TemplateId::DebateRegenerate,
                          {{"title", doc.title()},
                           {"position", session.position},
                           {"article", article_excerpt(doc, options.article_max_code_points)},
                           {"history", render_history(session.turns, turn, options.history_turns)},
                           {"rejected", rejected_text},
                           {"attempt", std::to_string(attempt)}})
                .text;
    unique = std::find(rejected.begin(), rejected.end(), fresh) == rejected.end();
  }
  if (!unique) {
    throw Error(ErrorCode::DuplicateRegeneration,
                "provider repeated an earlier reply for turn " + std::to_string(turn));
  }
  apply(session, {EventKind::Feedback, now, {}, {}, turn, {}, Feedback::Down}, options);
  apply(session, {EventKind::Regenerate, std::max(now, clock()), {}, {}, turn, fresh, Feedback::None}, options);
  return session;
}

DebateSession close_debate(DebateSession session, const Clock& clock) {
  require_active(session);
  DebateEvent e;
  e.kind = EventKind::Close;
  e.timestamp_ms = std::max(session.events.back().timestamp_ms, clock());
  apply(session, e);
  return session;
}

}  // namespace counterpoint::debate
