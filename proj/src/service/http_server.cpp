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

#include "counterpoint/service/http_server.hpp"

#include <httplib.h>

#include "counterpoint/service/json.hpp"

namespace counterpoint::service {

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_pending(httplib::Response& res) { send_json(res, 202, {{"status", "pending"}}); }

Json parse_any(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    return Json::parse(req.body);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("request body is not valid JSON: ") + e.what());
  }
}

Json parse_body(const httplib::Request& req) {
  Json j = parse_any(req);
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "request body must be a JSON object");
  return j;
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return parse_field(key, [&] { return j.at(key).get<std::string>(); });
}

std::string required_string(const Json& j, const char* key) {
  auto v = optional_string(j, key);
  if (!v) throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
  return *v;
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_json(res, http_status(e.code()), error_body(e.code(), e.what()));
    } catch (const std::exception& e) {
      send_json(res, 500, error_body(ErrorCode::IoError, e.what()));
    }
  };
}

}  // namespace

int http_status(ErrorCode code) {
  if (is_provider_error(code)) return 503;
  switch (code) {
    case ErrorCode::EmptyDocument:
    case ErrorCode::EmptySession:
      return 422;
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::RegenerationLimitExceeded:
    case ErrorCode::SessionClosed:
    case ErrorCode::EmptyIndex:
      return 409;
    case ErrorCode::UnknownSchemaVersion:
    case ErrorCode::CorruptArtifact:
    case ErrorCode::IoError:
    case ErrorCode::MissingPlaceholder:
      return 500;
    default:
      return 400;
  }
}

Json error_body(ErrorCode code, const std::string& message) {
  if (is_provider_error(code)) {
    return {{"code", "ProviderUnavailable"}, {"cause", to_string(code)}, {"message", message}};
  }
  return {{"code", to_string(code)}, {"message", message}};
}

HttpServer::HttpServer(Service& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::IoError, "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorCode::IoError, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_->is_running()) server_->stop();
}

void HttpServer::routes() {
  auto& s = *server_;
  Service& svc = service_;

  s.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  s.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  s.Get("/health", [](const httplib::Request&, httplib::Response& res) { send_json(res, 200, {{"status", "ok"}}); });

  s.Post("/documents", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const Json body = parse_body(req);
           const std::string title = optional_string(body, "title").value_or("");
           const std::string text = optional_string(body, "body").value_or("");
           const Lean lean = lean_from_string(optional_string(body, "lean").value_or("Unknown"));
           const auto id = svc.upload(title, text, lean, optional_string(body, "source_url"));
           send_json(res, 200, {{"doc_id", id}, {"status", to_string(svc.status(id).state)}});
         }));

  s.Get(R"(/documents/([A-Za-z0-9_-]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          send_json(res, 200, to_json(svc.document(req.matches[1])));
        }));

  s.Get(R"(/documents/([A-Za-z0-9_-]+)/status)",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          const std::string id = req.matches[1];
          const auto st = svc.status(id);
          Json body = {{"doc_id", id}, {"status", to_string(st.state)}};
          if (st.error) body["error"] = error_body(*st.error, st.message);
          send_json(res, 200, body);
        }));

  s.Get(R"(/documents/([A-Za-z0-9_-]+)/annotations)",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          const auto result = svc.annotations(req.matches[1]);
          if (std::holds_alternative<Pending>(result)) return send_pending(res);
          const auto& a = std::get<annotate::AnnotatedDocument>(result);
          const std::string format = req.has_param("format") ? req.get_param_value("format") : "full";
          if (format == "spans-only") return send_json(res, 200, spans_only_json(a));
          if (format != "full") throw Error(ErrorCode::InvalidArgument, "format must be full or spans-only");
          send_json(res, 200, to_json(a));
        }));

  s.Post(R"(/documents/([A-Za-z0-9_-]+)/context)",
         guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           send_json(res, 200, to_json(svc.context(req.matches[1])));
         }));

  s.Post(R"(/documents/([A-Za-z0-9_-]+)/qa)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const Json body = parse_body(req);
           const auto result =
               svc.ask(req.matches[1], optional_string(body, "conversation_id"), required_string(body, "question"));
           if (std::holds_alternative<Pending>(result)) return send_pending(res);
           send_json(res, 200, to_json(std::get<rag::QaConversation>(result)));
         }));

  s.Get(R"(/documents/([A-Za-z0-9_-]+)/qa/([A-Za-z0-9_-]+))",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          send_json(res, 200, to_json(svc.conversation(req.matches[1], req.matches[2])));
        }));

  s.Post(R"(/documents/([A-Za-z0-9_-]+)/debate)",
         guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const Json body = parse_body(req);
           send_json(res, 200,
                     to_json(svc.debate(req.matches[1], optional_string(body, "session_id"),
                                        required_string(body, "message"))));
         }));

  s.Get(R"(/debate/([A-Za-z0-9_-]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          send_json(res, 200, to_json(svc.debate_session(req.matches[1])));
        }));

  s.Post(R"(/debate/([A-Za-z0-9_-]+)/close)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           send_json(res, 200, to_json(svc.close_debate(req.matches[1])));
         }));

  s.Post(R"(/debate/([A-Za-z0-9_-]+)/turns/(\d+)/feedback)",
         guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const Json body = parse_body(req);
           const auto thumbs = debate::feedback_from_string(required_string(body, "thumbs"));
           const std::size_t turn = std::stoul(req.matches[2]);
           send_json(res, 200, to_json(svc.feedback(req.matches[1], turn, thumbs)));
         }));

  s.Post("/selections/explain", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const Json body = parse_body(req);
           const std::string doc_id = required_string(body, "doc_id");
           const Span span = parse_field("selection", [&] {
             return Span{body.at("start").get<std::size_t>(), body.at("end").get<std::size_t>()};
           });
           send_json(res, 200, to_json(svc.explain(doc_id, span)));
         }));

  s.Post(R"(/sessions/([A-Za-z0-9_-]+)/events)",
         guarded([&svc](const httplib::Request& req, httplib::Response& res) {
           const std::string sid = req.matches[1];
           Json body = parse_any(req);
           if (body.is_object()) body = Json::array({body});
           if (!body.is_array()) throw Error(ErrorCode::ParseError, "expected an array of events");
           std::vector<analytics::SessionEvent> events;
           for (const auto& e : body) events.push_back(session_event_from_json(e, sid));
           svc.record_events(sid, events);
           res.status = 204;
         }));

  s.Get(R"(/sessions/([A-Za-z0-9_-]+)/analytics)",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          send_json(res, 200, to_json(svc.analytics(req.matches[1])));
        }));
}

}  // namespace counterpoint::service
