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

#include "counterpoint/service/json.hpp"

namespace counterpoint::service {

namespace {

Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

}  // namespace

Json to_json(Span span) { return {{"start", span.start}, {"end", span.end}}; }

Span span_from_json(const Json& j) {
  return parse_field("span", [&] { return Span{j.at("start").get<std::size_t>(), j.at("end").get<std::size_t>()}; });
}

Json to_json(const Document& doc) {
  return {{"doc_id", doc.id()},
          {"title", doc.title()},
          {"body", doc.body()},
          {"lean", to_string(doc.lean())},
          {"source_url", optional_string(doc.source_url())}};
}

Document document_from_json(const Json& j) {
  return parse_field("document", [&] {
    std::optional<std::string> url;
    if (j.contains("source_url") && !j.at("source_url").is_null()) url = j.at("source_url").get<std::string>();
    return Document::restore(j.at("doc_id").get<std::string>(), j.at("title").get<std::string>(),
                             j.at("body").get<std::string>(), lean_from_string(j.at("lean").get<std::string>()),
                             std::move(url));
  });
}

Json to_json(const annotate::AnnotatedDocument& a) {
  Json claims = Json::array();
  for (const auto& c : a.claims) {
    claims.push_back({{"claim_id", c.claim_id},
                      {"claim_text", c.claim_text},
                      {"span", to_json(c.span)},
                      {"match_kind", annotate::to_string(c.match_kind)},
                      {"match_score", c.match_score}});
  }
  Json counters = Json::array();
  for (const auto& c : a.counters) {
    counters.push_back({{"claim_id", c.claim_id},
                        {"summary", c.summary},
                        {"full_text", c.full_text},
                        {"template_id", llm::to_string(c.template_id)},
                        {"provider_id", c.provider_id}});
  }
  return {{"doc_id", a.doc_id},
          {"claims", claims},
          {"counters", counters},
          {"metadata",
           {{"extracted", a.metadata.extracted},
            {"unmatched", a.metadata.unmatched},
            {"overlap_dropped", a.metadata.overlap_dropped},
            {"per_claim_fallbacks", a.metadata.per_claim_fallbacks}}}};
}

annotate::AnnotatedDocument annotation_from_json(const Json& j) {
  return parse_field("annotation", [&] {
    annotate::AnnotatedDocument a;
    a.doc_id = j.at("doc_id").get<std::string>();
    for (const auto& c : j.at("claims")) {
      a.claims.push_back({c.at("claim_id").get<std::string>(), c.at("claim_text").get<std::string>(),
                          span_from_json(c.at("span")),
                          annotate::match_kind_from_string(c.at("match_kind").get<std::string>()),
                          c.at("match_score").get<double>()});
    }
    for (const auto& c : j.at("counters")) {
      a.counters.push_back({c.at("claim_id").get<std::string>(), c.at("summary").get<std::string>(),
                            c.at("full_text").get<std::string>(),
                            llm::template_from_string(c.at("template_id").get<std::string>()),
                            c.at("provider_id").get<std::string>()});
    }
    const auto& m = j.at("metadata");
    a.metadata.extracted = m.at("extracted").get<std::size_t>();
    a.metadata.unmatched = m.at("unmatched").get<std::vector<std::string>>();
    a.metadata.overlap_dropped = m.at("overlap_dropped").get<std::vector<std::string>>();
    a.metadata.per_claim_fallbacks = m.at("per_claim_fallbacks").get<std::size_t>();
    if (a.claims.size() != a.counters.size()) {
      throw Error(ErrorCode::CorruptArtifact, "annotation has mismatched claims and counters");
    }
    return a;
  });
}

Json spans_only_json(const annotate::AnnotatedDocument& a) {
  Json claims = Json::array();
  for (const auto& c : a.claims) {
    claims.push_back({{"claim_id", c.claim_id}, {"start", c.span.start}, {"end", c.span.end}});
  }
  return {{"doc_id", a.doc_id}, {"claims", claims}};
}

Json to_json(const context::ContextSummary& s) {
  Json snippets = Json::array();
  for (const auto& sn : s.snippets) {
    snippets.push_back({{"title", sn.title}, {"url", sn.url}, {"snippet", sn.snippet}, {"rank", sn.rank}});
  }
  return {{"doc_id", s.doc_id},
          {"query", s.query},
          {"snippets", snippets},
          {"summary_text", s.summary_text},
          {"article_only", s.article_only},
          {"generated_at_ms", s.generated_at_ms}};
}

context::ContextSummary context_summary_from_json(const Json& j) {
  return parse_field("context summary", [&] {
    context::ContextSummary s;
    s.doc_id = j.at("doc_id").get<std::string>();
    s.query = j.at("query").get<std::string>();
    for (const auto& sn : j.at("snippets")) {
      s.snippets.push_back({sn.at("title").get<std::string>(), sn.at("url").get<std::string>(),
                            sn.at("snippet").get<std::string>(), sn.at("rank").get<int>()});
    }
    s.summary_text = j.at("summary_text").get<std::string>();
    s.article_only = j.at("article_only").get<bool>();
    s.generated_at_ms = j.at("generated_at_ms").get<std::int64_t>();
    return s;
  });
}

Json to_json(const context::SelectionExplanation& e) {
  return {{"selected_text", e.selected_text},
          {"span", to_json(e.span)},
          {"mode", context::to_string(e.mode)},
          {"explanation", e.explanation}};
}

Json to_json(const rag::QaConversation& conv) {
  Json turns = Json::array();
  for (const auto& t : conv.turns) {
    Json turn = {{"role", to_string(t.role)}, {"text", t.text}, {"timestamp_ms", t.timestamp_ms}};
    if (t.role == Role::Bot) turn["cited_chunks"] = t.cited_chunks;
    turns.push_back(std::move(turn));
  }
  return {{"conversation_id", conv.conversation_id}, {"doc_id", conv.doc_id}, {"turns", turns}};
}

rag::QaConversation qa_conversation_from_json(const Json& j) {
  return parse_field("conversation", [&] {
    rag::QaConversation conv;
    conv.conversation_id = j.at("conversation_id").get<std::string>();
    conv.doc_id = j.at("doc_id").get<std::string>();
    for (const auto& t : j.at("turns")) {
      rag::QaTurn turn;
      turn.role = role_from_string(t.at("role").get<std::string>());
      turn.text = t.at("text").get<std::string>();
      turn.timestamp_ms = t.at("timestamp_ms").get<std::int64_t>();
      if (t.contains("cited_chunks")) turn.cited_chunks = t.at("cited_chunks").get<std::vector<std::size_t>>();
      conv.turns.push_back(std::move(turn));
    }
    if (!rag::well_formed(conv)) throw Error(ErrorCode::CorruptArtifact, "conversation roles do not alternate");
    return conv;
  });
}

Json to_json(const debate::DebateEvent& e) {
  Json j = {{"kind", debate::to_string(e.kind)}, {"timestamp_ms", e.timestamp_ms}};
  switch (e.kind) {
    case debate::EventKind::Open:
      j["session_id"] = e.session_id;
      j["doc_id"] = e.doc_id;
      break;
    case debate::EventKind::UserTurn:
    case debate::EventKind::BotTurn:
      j["text"] = e.text;
      break;
    case debate::EventKind::Feedback:
      j["turn"] = e.turn;
      j["feedback"] = debate::to_string(e.feedback);
      break;
    case debate::EventKind::Regenerate:
      j["turn"] = e.turn;
      j["text"] = e.text;
      break;
    case debate::EventKind::Close:
      break;
  }
  return j;
}

debate::DebateEvent debate_event_from_json(const Json& j) {
  return parse_field("debate event", [&] {
    debate::DebateEvent e;
    e.kind = debate::event_kind_from_string(j.at("kind").get<std::string>());
    e.timestamp_ms = j.at("timestamp_ms").get<std::int64_t>();
    e.session_id = j.value("session_id", "");
    e.doc_id = j.value("doc_id", "");
    e.turn = j.value("turn", std::size_t{0});
    e.text = j.value("text", "");
    if (j.contains("feedback")) e.feedback = debate::feedback_from_string(j.at("feedback").get<std::string>());
    return e;
  });
}

Json to_json(const debate::DebateSession& s) {
  Json turns = Json::array();
  for (std::size_t i = 0; i < s.turns.size(); ++i) {
    const auto& t = s.turns[i];
    Json turn = {{"index", i + 1}, {"role", to_string(t.role)}, {"text", t.text}, {"timestamp_ms", t.timestamp_ms}};
    if (t.role == Role::Bot) {
      turn["feedback"] = debate::to_string(t.feedback);
      turn["regeneration_count"] = t.regeneration_count;
      turn["audit"] = t.audit;
    }
    turns.push_back(std::move(turn));
  }
  return {{"session_id", s.session_id},
          {"doc_id", s.doc_id},
          {"position", s.position},
          {"status", debate::to_string(s.status)},
          {"turns", turns}};
}

Json to_json(const analytics::SessionEvent& e) {
  return {{"session_id", e.session_id},
          {"feature", analytics::to_string(e.feature)},
          {"kind", analytics::to_string(e.kind)},
          {"timestamp_ms", e.timestamp_ms}};
}

analytics::SessionEvent session_event_from_json(const Json& j, const std::string& session_id) {
  return parse_field("session event", [&] {
    analytics::SessionEvent e;
    e.session_id = j.value("session_id", session_id);
    if (e.session_id != session_id) {
      throw Error(ErrorCode::InvalidArgument, "event session_id does not match the request path");
    }
    try {
      e.feature = analytics::feature_from_string(j.at("feature").get<std::string>());
      e.kind = analytics::event_kind_from_string(j.at("kind").get<std::string>());
    } catch (const Error& err) {
      throw Error(ErrorCode::ParseError, err.what());
    }
    const char* ts = j.contains("timestamp_ms") ? "timestamp_ms" : "timestamp";
    e.timestamp_ms = j.at(ts).get<std::int64_t>();
    return e;
  });
}

Json to_json(const analytics::FeatureTimeBreakdown& b) {
  Json features = Json::object();
  for (auto f : analytics::kAllFeatures) {
    features[std::string(analytics::to_string(f))] = {{"seconds", b.seconds_of(f)}, {"fraction", b.fraction_of(f)}};
  }
  return {{"session_id", b.session_id}, {"session_seconds", b.session_seconds}, {"features", features}};
}

Json to_json(const analytics::UTestResult& r) {
  return {{"u", r.u},
          {"u_a", r.u_a},
          {"u_b", r.u_b},
          {"n1", r.n1},
          {"n2", r.n2},
          {"method", analytics::to_string(r.method)},
          {"z", r.z ? Json(*r.z) : Json(nullptr)},
          {"p_two_sided", r.p_two_sided},
          {"tie_correction_applied", r.tie_correction_applied},
          {"degenerate", r.degenerate}};
}

Json to_json(const analytics::ComparisonRow& row) {
  return {{"lean", to_string(row.lean)},
          {"measure", analytics::to_string(row.measure)},
          {"n_baseline", row.n_baseline},
          {"n_system", row.n_system},
          {"median_baseline", row.median_baseline},
          {"median_system", row.median_system},
          {"test", to_json(row.test)},
          {"significant", row.significant}};
}

}  // namespace counterpoint::service
