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

#include "counterpoint/service/store.hpp"

#include <algorithm>
#include <cctype>

#include "counterpoint/core/files.hpp"
#include "counterpoint/error.hpp"
#include "counterpoint/service/json.hpp"

namespace counterpoint::service {

namespace fs = std::filesystem;

namespace {

nlohmann::json parse_artifact(const std::string& text, const fs::path& path) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptArtifact, path.string() + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(ArtifactKind kind) {
  switch (kind) {
    case ArtifactKind::Document: return "Document";
    case ArtifactKind::Annotation: return "Annotation";
    case ArtifactKind::Index: return "Index";
    case ArtifactKind::QaConversation: return "QaConversation";
    case ArtifactKind::DebateSession: return "DebateSession";
    case ArtifactKind::EventLog: return "EventLog";
    case ArtifactKind::ContextSummary: return "ContextSummary";
  }
  return "Document";
}

std::string_view to_string(PipelineState state) {
  switch (state) {
    case PipelineState::Pending: return "pending";
    case PipelineState::Ready: return "ready";
    case PipelineState::Failed: return "failed";
  }
  return "pending";
}

PipelineState pipeline_state_from_string(std::string_view name) {
  for (auto s : {PipelineState::Pending, PipelineState::Ready, PipelineState::Failed}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::CorruptArtifact, "unknown pipeline state: " + std::string(name));
}

void check_key(const std::string& key) {
  const bool ok = !key.empty() && key.size() <= 64 && std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
  if (!ok) throw Error(ErrorCode::InvalidArgument, "invalid identifier: '" + key + "'");
}

nlohmann::json envelope(ArtifactKind kind, const std::string& key, nlohmann::json payload) {
  return {{"kind", to_string(kind)}, {"key", key}, {"schema_version", kSchemaVersion}, {"payload", std::move(payload)}};
}

nlohmann::json open_envelope(const nlohmann::json& j, ArtifactKind kind, const std::string& key) {
  if (!j.is_object() || !j.contains("schema_version") || !j.at("schema_version").is_number_integer()) {
    throw Error(ErrorCode::CorruptArtifact, "artifact lacks a schema_version");
  }
  const int version = j.at("schema_version").get<int>();
  if (version != kSchemaVersion) {
    throw Error(ErrorCode::UnknownSchemaVersion, "unsupported schema_version " + std::to_string(version));
  }
  if (j.value("kind", "") != to_string(kind) || j.value("key", "") != key) {
    throw Error(ErrorCode::CorruptArtifact, "artifact is not the expected " + std::string(to_string(kind)) + " " + key);
  }
  if (!j.contains("payload")) throw Error(ErrorCode::CorruptArtifact, "artifact has no payload");
  return j.at("payload");
}

FileStore::FileStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_ / "documents");
  fs::create_directories(root_ / "debates");
  fs::create_directories(root_ / "sessions");
}

std::size_t FileStore::remove_temp_artifacts() const {
  std::vector<fs::path> doomed;
  for (const auto& entry : fs::recursive_directory_iterator(root_)) {
    if (entry.is_regular_file() && is_temp_artifact(entry.path())) doomed.push_back(entry.path());
  }
  for (const auto& p : doomed) fs::remove(p);
  return doomed.size();
}

fs::path FileStore::document_dir(const std::string& doc_id) const {
  check_key(doc_id);
  return root_ / "documents" / doc_id;
}

void FileStore::write_json(const fs::path& path, ArtifactKind kind, const std::string& key,
                           const nlohmann::json& payload) const {
  write_file_atomic(path, envelope(kind, key, payload).dump(2) + "\n");
}

std::optional<nlohmann::json> FileStore::read_json(const fs::path& path, ArtifactKind kind,
                                                   const std::string& key) const {
  if (!fs::exists(path)) return std::nullopt;
  return open_envelope(parse_artifact(read_file(path), path), kind, key);
}

void FileStore::write_jsonl(const fs::path& path, ArtifactKind kind, const std::string& key,
                            const std::vector<nlohmann::json>& lines) const {
  std::string out = envelope(kind, key, nullptr).dump() + "\n";
  for (const auto& l : lines) out += l.dump() + "\n";
  write_file_atomic(path, out);
}

std::optional<std::vector<nlohmann::json>> FileStore::read_jsonl(const fs::path& path, ArtifactKind kind,
                                                                 const std::string& key) const {
  if (!fs::exists(path)) return std::nullopt;
  const std::string text = read_file(path);
  std::vector<nlohmann::json> lines;
  bool header = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    auto j = parse_artifact(line, path);
    if (header) {
      open_envelope(j, kind, key);
      header = false;
    } else {
      lines.push_back(std::move(j));
    }
  }
  if (header) throw Error(ErrorCode::CorruptArtifact, path.string() + " has no header line");
  return lines;
}

void FileStore::save_document(const Document& doc) const {
  write_json(document_dir(doc.id()) / "document.json", ArtifactKind::Document, doc.id(), to_json(doc));
}

std::optional<Document> FileStore::load_document(const std::string& doc_id) const {
  auto j = read_json(document_dir(doc_id) / "document.json", ArtifactKind::Document, doc_id);
  if (!j) return std::nullopt;
  return document_from_json(*j);
}

std::vector<std::string> FileStore::document_ids() const {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(root_ / "documents")) {
    if (entry.is_directory() && fs::exists(entry.path() / "document.json")) {
      out.push_back(entry.path().filename().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void FileStore::save_status(const std::string& doc_id, const PipelineStatus& status) const {
  nlohmann::json j = {{"state", to_string(status.state)}, {"message", status.message}};
  j["error"] = status.error ? nlohmann::json(to_string(*status.error)) : nlohmann::json(nullptr);
  write_json(document_dir(doc_id) / "status.json", ArtifactKind::Document, doc_id, j);
}

std::optional<PipelineStatus> FileStore::load_status(const std::string& doc_id) const {
  auto j = read_json(document_dir(doc_id) / "status.json", ArtifactKind::Document, doc_id);
  if (!j) return std::nullopt;
  return parse_field("status", [&] {
    PipelineStatus s;
    s.state = pipeline_state_from_string(j->at("state").get<std::string>());
    s.message = j->value("message", "");
    if (j->contains("error") && !j->at("error").is_null()) {
      const auto name = j->at("error").get<std::string>();
      for (int c = 0; c <= static_cast<int>(ErrorCode::IoError); ++c) {
        if (to_string(static_cast<ErrorCode>(c)) == name) s.error = static_cast<ErrorCode>(c);
      }
    }
    return s;
  });
}

void FileStore::save_annotation(const annotate::AnnotatedDocument& a) const {
  write_json(document_dir(a.doc_id) / "annotation.json", ArtifactKind::Annotation, a.doc_id, to_json(a));
}

std::optional<annotate::AnnotatedDocument> FileStore::load_annotation(const std::string& doc_id) const {
  auto j = read_json(document_dir(doc_id) / "annotation.json", ArtifactKind::Annotation, doc_id);
  if (!j) return std::nullopt;
  auto a = annotation_from_json(*j);
  if (a.doc_id != doc_id) throw Error(ErrorCode::CorruptArtifact, "annotation belongs to another document");
  return a;
}

void FileStore::save_index(const rag::VectorIndex& index) const {
  rag::save_index(index, document_dir(index.doc_id) / "index.cpvi");
}

std::optional<rag::VectorIndex> FileStore::load_index(const std::string& doc_id) const {
  const auto path = document_dir(doc_id) / "index.cpvi";
  if (!fs::exists(path)) return std::nullopt;
  auto index = rag::load_index(path);
  if (index.doc_id != doc_id) throw Error(ErrorCode::CorruptArtifact, "index belongs to another document");
  return index;
}

void FileStore::save_context(const context::ContextSummary& s) const {
  write_json(document_dir(s.doc_id) / "context.json", ArtifactKind::ContextSummary, s.doc_id, to_json(s));
}

std::optional<context::ContextSummary> FileStore::load_context(const std::string& doc_id) const {
  auto j = read_json(document_dir(doc_id) / "context.json", ArtifactKind::ContextSummary, doc_id);
  if (!j) return std::nullopt;
  return context_summary_from_json(*j);
}

void FileStore::save_conversation(const rag::QaConversation& conv) const {
  check_key(conv.conversation_id);
  write_json(document_dir(conv.doc_id) / "qa" / (conv.conversation_id + ".json"), ArtifactKind::QaConversation,
             conv.conversation_id, to_json(conv));
}

std::optional<rag::QaConversation> FileStore::load_conversation(const std::string& doc_id,
                                                                const std::string& conversation_id) const {
  check_key(conversation_id);
  auto j = read_json(document_dir(doc_id) / "qa" / (conversation_id + ".json"), ArtifactKind::QaConversation,
                     conversation_id);
  if (!j) return std::nullopt;
  return qa_conversation_from_json(*j);
}

void FileStore::save_debate(const debate::DebateSession& session) const {
  check_key(session.session_id);
  std::vector<nlohmann::json> lines;
  for (const auto& e : session.events) lines.push_back(to_json(e));
  write_jsonl(root_ / "debates" / (session.session_id + ".jsonl"), ArtifactKind::DebateSession, session.session_id,
              lines);
}

std::optional<debate::DebateSession> FileStore::load_debate(const std::string& session_id,
                                                            const debate::DebateOptions& options) const {
  check_key(session_id);
  auto lines = read_jsonl(root_ / "debates" / (session_id + ".jsonl"), ArtifactKind::DebateSession, session_id);
  if (!lines) return std::nullopt;
  std::vector<debate::DebateEvent> events;
  for (const auto& l : *lines) events.push_back(debate_event_from_json(l));
  auto session = debate::replay(events, options);
  if (session.session_id != session_id) throw Error(ErrorCode::CorruptArtifact, "debate log has another session id");
  return session;
}

void FileStore::save_events(const std::string& session_id, const analytics::EventLog& log) const {
  check_key(session_id);
  std::vector<nlohmann::json> lines;
  for (const auto& e : log.events(session_id)) lines.push_back(to_json(e));
  write_jsonl(root_ / "sessions" / (session_id + ".jsonl"), ArtifactKind::EventLog, session_id, lines);
}

std::optional<analytics::EventLog> FileStore::load_events(const std::string& session_id) const {
  check_key(session_id);
  auto lines = read_jsonl(root_ / "sessions" / (session_id + ".jsonl"), ArtifactKind::EventLog, session_id);
  if (!lines) return std::nullopt;
  analytics::EventLog log;
  for (const auto& l : *lines) log.record_event(session_event_from_json(l, session_id));
  return log;
}

}  // namespace counterpoint::service
