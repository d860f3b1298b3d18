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

#include "counterpoint/service/service.hpp"

#include "counterpoint/core/digest.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::service {

std::shared_ptr<std::mutex> KeyedMutex::get(const std::string& key) {
  std::lock_guard lock(mutex_);
  auto& slot = locks_[key];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

Service::Service(ServiceConfig config, std::shared_ptr<llm::Provider> provider,
                 std::shared_ptr<context::SearchProvider> search, Clock clock)
    : config_(std::move(config)),
      store_(config_.data_dir),
      gateway_(std::move(provider), config_.gateway),
      search_(std::move(search)),
      clock_(std::move(clock)) {
  config_.validate();
  for (std::size_t i = 0; i < config_.workers; ++i) workers_.emplace_back([this] { worker_loop(); });
  recover();
}

Service::~Service() {
  {
    std::lock_guard lock(queue_mutex_);
    stopping_ = true;
  }
  queue_cv_.notify_all();
  for (auto& t : workers_) t.join();
}

std::size_t Service::recover() {
  store_.remove_temp_artifacts();
  std::size_t requeued = 0;
  for (const auto& id : store_.document_ids()) {
    const auto status = store_.load_status(id);
    if (!status || status->state == PipelineState::Pending) {
      if (!status) store_.save_status(id, {});
      enqueue(id);
      ++requeued;
    }
  }
  return requeued;
}

void Service::enqueue(const std::string& doc_id) {
  {
    std::lock_guard lock(queue_mutex_);
    if (!inflight_.insert(doc_id).second) return;
    queue_.push_back(doc_id);
  }
  queue_cv_.notify_one();
}

void Service::worker_loop() {
  while (true) {
    std::string doc_id;
    {
      std::unique_lock lock(queue_mutex_);
      queue_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      doc_id = queue_.front();
      queue_.pop_front();
      ++running_;
    }
    run_pipeline(doc_id);
    {
      std::lock_guard lock(queue_mutex_);
      --running_;
      inflight_.erase(doc_id);
    }
    idle_cv_.notify_all();
  }
}

void Service::run_pipeline(const std::string& doc_id) {
  PipelineStatus status;
  try {
    const auto doc = store_.load_document(doc_id);
    if (!doc) throw Error(ErrorCode::NotFound, "document " + doc_id + " vanished");
    store_.save_annotation(annotate::annotate(*doc, gateway_, config_.annotate));
    auto index = rag::build_index(*doc, gateway_, config_.chunk);
    store_.save_index(index);
    {
      std::lock_guard lock(index_mutex_);
      index_cache_[doc_id] = std::make_shared<const rag::VectorIndex>(std::move(index));
    }
    status.state = PipelineState::Ready;
  } catch (const Error& e) {
    status.state = PipelineState::Failed;
    status.error = e.code();
    status.message = e.what();
  } catch (const std::exception& e) {
    status.state = PipelineState::Failed;
    status.error = ErrorCode::IoError;
    status.message = e.what();
  }
  auto lock = doc_locks_.get(doc_id);
  std::lock_guard guard(*lock);
  try {
    store_.save_status(doc_id, status);
  } catch (const std::exception&) {
    // Leaves the document pending; the next start retries it.
  }
}

void Service::wait_idle() {
  std::unique_lock lock(queue_mutex_);
  idle_cv_.wait(lock, [this] { return queue_.empty() && running_ == 0; });
}

std::string Service::new_id(char prefix, const std::string& seed) {
  std::uint64_t n;
  {
    std::lock_guard lock(id_mutex_);
    n = ++id_counter_;
  }
  return std::string(1, prefix) +
         short_digest(seed + '\n' + std::to_string(clock_()) + '\n' + std::to_string(n)).substr(0, 15);
}

std::string Service::upload(const std::string& title, const std::string& body, Lean lean,
                            std::optional<std::string> source_url) {
  const Document doc = ingest_document(body, title, lean, std::move(source_url));
  auto lock = doc_locks_.get(doc.id());
  std::lock_guard guard(*lock);
  const auto status = store_.load_document(doc.id()) ? store_.load_status(doc.id()) : std::nullopt;
  if (status && status->state != PipelineState::Failed) return doc.id();
  store_.save_document(doc);
  store_.save_status(doc.id(), {});
  enqueue(doc.id());
  return doc.id();
}

Document Service::document(const std::string& doc_id) const {
  check_key(doc_id);
  auto doc = store_.load_document(doc_id);
  if (!doc) throw Error(ErrorCode::NotFound, "no document " + doc_id);
  return std::move(*doc);
}

PipelineStatus Service::status(const std::string& doc_id) const {
  document(doc_id);
  auto lock = doc_locks_.get(doc_id);
  std::lock_guard guard(*lock);
  return store_.load_status(doc_id).value_or(PipelineStatus{});
}

std::variant<Pending, annotate::AnnotatedDocument> Service::annotations(const std::string& doc_id) const {
  const auto s = status(doc_id);
  if (s.state == PipelineState::Pending) return Pending{};
  if (s.state == PipelineState::Failed) throw Error(s.error.value_or(ErrorCode::IoError), s.message);
  auto a = store_.load_annotation(doc_id);
  if (!a) throw Error(ErrorCode::CorruptArtifact, "document " + doc_id + " is ready but has no annotation");
  return std::move(*a);
}

context::ContextSummary Service::context(const std::string& doc_id) {
  const Document doc = document(doc_id);
  auto lock = doc_locks_.get(doc_id);
  std::lock_guard guard(*lock);
  if (auto cached = store_.load_context(doc_id)) return std::move(*cached);
  const auto snippets = context::fetch_context(*search_, doc.title(), config_.context.max_snippets);
  auto summary = context::summarize_context(doc, snippets, gateway_, config_.context, clock_);
  store_.save_context(summary);
  return summary;
}

std::shared_ptr<const rag::VectorIndex> Service::index_for(const std::string& doc_id) {
  std::lock_guard lock(index_mutex_);
  auto& slot = index_cache_[doc_id];
  if (!slot) {
    auto loaded = store_.load_index(doc_id);
    if (!loaded) throw Error(ErrorCode::CorruptArtifact, "document " + doc_id + " is ready but has no index");
    slot = std::make_shared<const rag::VectorIndex>(std::move(*loaded));
  }
  return slot;
}

std::variant<Pending, rag::QaConversation> Service::ask(const std::string& doc_id,
                                                        const std::optional<std::string>& conversation_id,
                                                        const std::string& question) {
  const Document doc = document(doc_id);
  const auto s = status(doc_id);
  if (s.state == PipelineState::Pending) return Pending{};
  if (s.state == PipelineState::Failed) throw Error(s.error.value_or(ErrorCode::IoError), s.message);
  const auto index = index_for(doc_id);

  const std::string conv_id =
      conversation_id && !conversation_id->empty() ? *conversation_id : new_id('q', doc_id + '\n' + question);
  check_key(conv_id);
  auto lock = conversation_locks_.get(doc_id + "/" + conv_id);
  std::lock_guard guard(*lock);
  auto conv = store_.load_conversation(doc_id, conv_id).value_or(rag::new_conversation(doc_id, conv_id));
  conv = rag::answer(doc, *index, std::move(conv), question, gateway_, config_.qa, clock_);
  store_.save_conversation(conv);
  return conv;
}

rag::QaConversation Service::conversation(const std::string& doc_id, const std::string& conversation_id) const {
  document(doc_id);
  auto lock = conversation_locks_.get(doc_id + "/" + conversation_id);
  std::lock_guard guard(*lock);
  auto conv = store_.load_conversation(doc_id, conversation_id);
  if (!conv) throw Error(ErrorCode::NotFound, "no conversation " + conversation_id);
  return std::move(*conv);
}

debate::DebateSession Service::debate(const std::string& doc_id, const std::optional<std::string>& session_id,
                                      const std::string& message) {
  const Document doc = document(doc_id);
  if (!session_id || session_id->empty()) {
    const std::string id = new_id('d', doc_id + '\n' + message);
    auto lock = debate_locks_.get(id);
    std::lock_guard guard(*lock);
    auto session = debate::open_debate(doc, message, gateway_, config_.debate, clock_, id);
    store_.save_debate(session);
    return session;
  }
  check_key(*session_id);
  auto lock = debate_locks_.get(*session_id);
  std::lock_guard guard(*lock);
  auto session = store_.load_debate(*session_id, config_.debate);
  if (!session) throw Error(ErrorCode::NotFound, "no debate session " + *session_id);
  if (session->doc_id != doc_id) throw Error(ErrorCode::InvalidArgument, "session belongs to another document");
  auto next = debate::rebut(doc, std::move(*session), message, gateway_, config_.debate, clock_);
  store_.save_debate(next);
  return next;
}

debate::DebateSession Service::feedback(const std::string& session_id, std::size_t turn, debate::Feedback thumbs) {
  check_key(session_id);
  auto lock = debate_locks_.get(session_id);
  std::lock_guard guard(*lock);
  auto session = store_.load_debate(session_id, config_.debate);
  if (!session) throw Error(ErrorCode::NotFound, "no debate session " + session_id);
  const Document doc = document(session->doc_id);
  auto next = debate::give_feedback(doc, std::move(*session), turn, thumbs, gateway_, config_.debate, clock_);
  store_.save_debate(next);
  return next;
}

debate::DebateSession Service::close_debate(const std::string& session_id) {
  check_key(session_id);
  auto lock = debate_locks_.get(session_id);
  std::lock_guard guard(*lock);
  auto session = store_.load_debate(session_id, config_.debate);
  if (!session) throw Error(ErrorCode::NotFound, "no debate session " + session_id);
  auto next = debate::close_debate(std::move(*session), clock_);
  store_.save_debate(next);
  return next;
}

debate::DebateSession Service::debate_session(const std::string& session_id) const {
  check_key(session_id);
  auto lock = debate_locks_.get(session_id);
  std::lock_guard guard(*lock);
  auto session = store_.load_debate(session_id, config_.debate);
  if (!session) throw Error(ErrorCode::NotFound, "no debate session " + session_id);
  return std::move(*session);
}

context::SelectionExplanation Service::explain(const std::string& doc_id, Span span) {
  const Document doc = document(doc_id);
  return context::explain_selection(doc, span, gateway_, config_.context);
}

void Service::record_events(const std::string& session_id, const std::vector<analytics::SessionEvent>& events) {
  check_key(session_id);
  auto lock = event_locks_.get(session_id);
  std::lock_guard guard(*lock);
  auto log = store_.load_events(session_id).value_or(analytics::EventLog{});
  for (const auto& e : events) {
    if (e.session_id != session_id) throw Error(ErrorCode::InvalidArgument, "event for another session");
    log.record_event(e);
  }
  if (!events.empty()) store_.save_events(session_id, log);
}

analytics::FeatureTimeBreakdown Service::analytics(const std::string& session_id) const {
  check_key(session_id);
  auto lock = event_locks_.get(session_id);
  std::lock_guard guard(*lock);
  const auto log = store_.load_events(session_id);
  if (!log) throw Error(ErrorCode::EmptySession, "no events for session " + session_id);
  return analytics::time_per_feature(*log, session_id);
}

}  // namespace counterpoint::service
