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

#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "counterpoint/analytics/events.hpp"
#include "counterpoint/annotate/annotator.hpp"
#include "counterpoint/context/context.hpp"
#include "counterpoint/context/search.hpp"
#include "counterpoint/core/clock.hpp"
#include "counterpoint/debate/debate.hpp"
#include "counterpoint/llm/gateway.hpp"
#include "counterpoint/rag/index.hpp"
#include "counterpoint/rag/qa.hpp"
#include "counterpoint/service/config.hpp"
#include "counterpoint/service/store.hpp"

namespace counterpoint::service {

// One mutex per key, created on first use.
class KeyedMutex {
 public:
  std::shared_ptr<std::mutex> get(const std::string& key);

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

struct Pending {};

// Application layer behind the HTTP API. Uploads are persisted before
// returning; annotation and index building run on a small worker pool. All
// artifacts live in the FileStore, so a restarted service picks up where the
// previous one stopped.
class Service {
 public:
  Service(ServiceConfig config, std::shared_ptr<llm::Provider> provider,
          std::shared_ptr<context::SearchProvider> search, Clock clock = system_clock());
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Removes temp files and requeues documents whose pipeline never finished.
  // Returns the number of documents requeued.
  std::size_t recover();

  // Throws EmptyDocument. Uploading an existing document is idempotent; a
  // failed pipeline is retried.
  std::string upload(const std::string& title, const std::string& body, Lean lean,
                     std::optional<std::string> source_url = std::nullopt);

  Document document(const std::string& doc_id) const;
  PipelineStatus status(const std::string& doc_id) const;

  // Pending while the pipeline runs; rethrows the stored error when it failed.
  std::variant<Pending, annotate::AnnotatedDocument> annotations(const std::string& doc_id) const;

  // Generated on first request, then served from the store.
  context::ContextSummary context(const std::string& doc_id);

  std::variant<Pending, rag::QaConversation> ask(const std::string& doc_id,
                                                 const std::optional<std::string>& conversation_id,
                                                 const std::string& question);
  rag::QaConversation conversation(const std::string& doc_id, const std::string& conversation_id) const;

  // Opens a session when session_id is empty, otherwise rebuts.
  debate::DebateSession debate(const std::string& doc_id, const std::optional<std::string>& session_id,
                               const std::string& message);
  debate::DebateSession feedback(const std::string& session_id, std::size_t turn, debate::Feedback thumbs);
  debate::DebateSession close_debate(const std::string& session_id);
  debate::DebateSession debate_session(const std::string& session_id) const;

  context::SelectionExplanation explain(const std::string& doc_id, Span span);

  // All-or-nothing: a batch with one bad event records nothing.
  void record_events(const std::string& session_id, const std::vector<analytics::SessionEvent>& events);
  analytics::FeatureTimeBreakdown analytics(const std::string& session_id) const;

  // Blocks until the pipeline queue is empty and no job is running.
  void wait_idle();

  const ServiceConfig& config() const { return config_; }
  const FileStore& store() const { return store_; }
  const llm::Gateway& gateway() const { return gateway_; }

 private:
  void enqueue(const std::string& doc_id);
  void worker_loop();
  void run_pipeline(const std::string& doc_id);
  std::string new_id(char prefix, const std::string& seed);
  std::shared_ptr<const rag::VectorIndex> index_for(const std::string& doc_id);

  ServiceConfig config_;
  FileStore store_;
  llm::Gateway gateway_;
  std::shared_ptr<context::SearchProvider> search_;
  Clock clock_;

  mutable KeyedMutex doc_locks_;
  mutable KeyedMutex conversation_locks_;
  mutable KeyedMutex debate_locks_;
  mutable KeyedMutex event_locks_;

  std::mutex index_mutex_;
  std::map<std::string, std::shared_ptr<const rag::VectorIndex>> index_cache_;

  std::mutex id_mutex_;
  std::uint64_t id_counter_ = 0;

  std::mutex queue_mutex_;
  std::condition_variable queue_cv_;
  std::condition_variable idle_cv_;
  std::deque<std::string> queue_;
  std::set<std::string> inflight_;
  std::size_t running_ = 0;
  bool stopping_ = false;
  std::vector<std::thread> workers_;
};

}  // namespace counterpoint::service
