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

#include <memory>
#include <string>

#include "counterpoint/error.hpp"
#include "counterpoint/service/service.hpp"

namespace httplib {
class Server;
}

namespace counterpoint::service {

// HTTP status for an error code. Provider-side failures are 503.
int http_status(ErrorCode code);

// {"code", "message"}; provider-side failures report code
// "ProviderUnavailable" and keep the original code under "cause".
nlohmann::json error_body(ErrorCode code, const std::string& message);

// JSON API over a Service:
//
//   GET  /health
//   POST /documents                                {title, body, lean?, source_url?} -> {doc_id, status}
//   GET  /documents/{id}                           -> Document
//   GET  /documents/{id}/status                    -> {doc_id, status, error?, message?}
//   GET  /documents/{id}/annotations[?format=spans-only]
//                                                  -> AnnotatedDocument, or 202 {status:"pending"}
//   POST /documents/{id}/context                   -> ContextSummary
//   POST /documents/{id}/qa                        {conversation_id?, question} -> QaConversation, or 202
//   GET  /documents/{id}/qa/{conversation_id}      -> QaConversation
//   POST /documents/{id}/debate                    {session_id?, message} -> DebateSession
//   GET  /debate/{session_id}                      -> DebateSession
//   POST /debate/{session_id}/close                -> DebateSession
//   POST /debate/{session_id}/turns/{index}/feedback {thumbs: "Up"|"Down"} -> DebateSession
//   POST /selections/explain                       {doc_id, start, end} -> SelectionExplanation
//   POST /sessions/{session_id}/events             [SessionEvent...] -> 204
//   GET  /sessions/{session_id}/analytics          -> FeatureTimeBreakdown
//
// Errors are {"code", "message"} with the status from http_status().
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  // Binds to `port` (0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();

 private:
  void routes();

  Service& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace counterpoint::service
