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

#include <nlohmann/json.hpp>

#include "counterpoint/analytics/events.hpp"
#include "counterpoint/analytics/stats.hpp"
#include "counterpoint/analytics/study.hpp"
#include "counterpoint/annotate/annotator.hpp"
#include "counterpoint/context/context.hpp"
#include "counterpoint/core/document.hpp"
#include "counterpoint/debate/debate.hpp"
#include "counterpoint/rag/qa.hpp"

// JSON shapes shared by the HTTP API, the CLI and the file store. Spans are
// {"start", "end"} in code points. Parsers throw ParseError on a missing or
// mistyped field and CorruptArtifact when the content breaks an invariant.
namespace counterpoint::service {

using Json = nlohmann::json;

Json to_json(Span span);
Span span_from_json(const Json& j);

Json to_json(const Document& doc);
Document document_from_json(const Json& j);

Json to_json(const annotate::AnnotatedDocument& annotation);
annotate::AnnotatedDocument annotation_from_json(const Json& j);
// {"doc_id", "claims": [{"claim_id", "start", "end"}]}
Json spans_only_json(const annotate::AnnotatedDocument& annotation);

Json to_json(const context::ContextSummary& summary);
context::ContextSummary context_summary_from_json(const Json& j);
Json to_json(const context::SelectionExplanation& explanation);

Json to_json(const rag::QaConversation& conv);
rag::QaConversation qa_conversation_from_json(const Json& j);

Json to_json(const debate::DebateEvent& event);
debate::DebateEvent debate_event_from_json(const Json& j);
// Session view for clients; the event log is persisted separately.
Json to_json(const debate::DebateSession& session);

Json to_json(const analytics::SessionEvent& event);
analytics::SessionEvent session_event_from_json(const Json& j, const std::string& session_id);
Json to_json(const analytics::FeatureTimeBreakdown& breakdown);
Json to_json(const analytics::UTestResult& result);
Json to_json(const analytics::ComparisonRow& row);

// Runs `fn` and rethrows nlohmann errors as ParseError with `what` as context.
template <typename Fn>
auto parse_field(const char* what, Fn&& fn) -> decltype(fn());

}  // namespace counterpoint::service

#include "counterpoint/error.hpp"

namespace counterpoint::service {

template <typename Fn>
auto parse_field(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

}  // namespace counterpoint::service
