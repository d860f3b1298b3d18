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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "counterpoint/analytics/events.hpp"
#include "counterpoint/annotate/annotator.hpp"
#include "counterpoint/context/context.hpp"
#include "counterpoint/core/document.hpp"
#include "counterpoint/debate/debate.hpp"
#include "counterpoint/rag/index.hpp"
#include "counterpoint/rag/qa.hpp"

namespace counterpoint::service {

inline constexpr int kSchemaVersion = 1;

enum class ArtifactKind { Document, Annotation, Index, QaConversation, DebateSession, EventLog, ContextSummary };

std::string_view to_string(ArtifactKind kind);

enum class PipelineState { Pending, Ready, Failed };

std::string_view to_string(PipelineState state);
PipelineState pipeline_state_from_string(std::string_view name);

struct PipelineStatus {
  PipelineState state = PipelineState::Pending;
  std::optional<ErrorCode> error;
  std::string message;
};

// Wraps a payload as {"kind", "key", "schema_version", "payload"}.
nlohmann::json envelope(ArtifactKind kind, const std::string& key, nlohmann::json payload);

// Returns the payload. Throws UnknownSchemaVersion for another version and
// CorruptArtifact for a kind or key mismatch.
nlohmann::json open_envelope(const nlohmann::json& j, ArtifactKind kind, const std::string& key);

// File-backed artifact store, one directory per document:
//
//   <root>/documents/<doc_id>/document.json
//   <root>/documents/<doc_id>/status.json
//   <root>/documents/<doc_id>/annotation.json
//   <root>/documents/<doc_id>/index.cpvi
//   <root>/documents/<doc_id>/context.json
//   <root>/documents/<doc_id>/qa/<conversation_id>.json
//   <root>/debates/<session_id>.jsonl   header line, then one event per line
//   <root>/sessions/<session_id>.jsonl  header line, then one event per line
//
// Every write replaces the whole file atomically. Callers serialize writers
// per key. Loaders return nullopt when the artifact does not exist.
class FileStore {
 public:
  explicit FileStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  // Removes temp files left by interrupted writes. Returns how many.
  std::size_t remove_temp_artifacts() const;

  void save_document(const Document& doc) const;
  std::optional<Document> load_document(const std::string& doc_id) const;
  std::vector<std::string> document_ids() const;

  void save_status(const std::string& doc_id, const PipelineStatus& status) const;
  std::optional<PipelineStatus> load_status(const std::string& doc_id) const;

  void save_annotation(const annotate::AnnotatedDocument& annotation) const;
  std::optional<annotate::AnnotatedDocument> load_annotation(const std::string& doc_id) const;

  void save_index(const rag::VectorIndex& index) const;
  std::optional<rag::VectorIndex> load_index(const std::string& doc_id) const;

  void save_context(const context::ContextSummary& summary) const;
  std::optional<context::ContextSummary> load_context(const std::string& doc_id) const;

  void save_conversation(const rag::QaConversation& conv) const;
  std::optional<rag::QaConversation> load_conversation(const std::string& doc_id,
                                                       const std::string& conversation_id) const;

  void save_debate(const debate::DebateSession& session) const;
  std::optional<debate::DebateSession> load_debate(const std::string& session_id,
                                                   const debate::DebateOptions& options) const;

  void save_events(const std::string& session_id, const analytics::EventLog& log) const;
  std::optional<analytics::EventLog> load_events(const std::string& session_id) const;

  std::filesystem::path document_dir(const std::string& doc_id) const;

 private:
  void write_json(const std::filesystem::path& path, ArtifactKind kind, const std::string& key,
                  const nlohmann::json& payload) const;
  std::optional<nlohmann::json> read_json(const std::filesystem::path& path, ArtifactKind kind,
                                          const std::string& key) const;
  void write_jsonl(const std::filesystem::path& path, ArtifactKind kind, const std::string& key,
                   const std::vector<nlohmann::json>& lines) const;
  std::optional<std::vector<nlohmann::json>> read_jsonl(const std::filesystem::path& path, ArtifactKind kind,
                                                        const std::string& key) const;

  std::filesystem::path root_;
};

// Keys become file names; only [A-Za-z0-9_-] up to 64 characters are
// accepted. Throws InvalidArgument otherwise.
void check_key(const std::string& key);

}  // namespace counterpoint::service
