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

#include "counterpoint/service/cli.hpp"

#include <csignal>
#include <cstdio>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "counterpoint/analytics/study.hpp"
#include "counterpoint/annotate/annotator.hpp"
#include "counterpoint/context/context.hpp"
#include "counterpoint/core/digest.hpp"
#include "counterpoint/core/files.hpp"
#include "counterpoint/rag/index.hpp"
#include "counterpoint/rag/qa.hpp"
#include "counterpoint/service/config.hpp"
#include "counterpoint/service/http_server.hpp"
#include "counterpoint/service/json.hpp"
#include "counterpoint/service/service.hpp"

namespace counterpoint::service {

namespace {

struct InputOptions {
  std::string file;
  std::string title;
  std::string lean = "Unknown";
};

void add_input(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("file", in.file, "Article as plain text")->required();
  cmd->add_option("--title", in.title, "Article title (default: file name without extension)");
  cmd->add_option("--lean", in.lean, "Left, Right, Neutral or Unknown");
}

Document load_input(const InputOptions& in) {
  const std::string raw = read_file(in.file);
  const std::string title = in.title.empty() ? std::filesystem::path(in.file).stem().string() : in.title;
  return ingest_document(raw, title, lean_from_string(in.lean));
}

std::string format_row(const analytics::ComparisonRow& r) {
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %8zu %8zu %10.3f %10.3f %8.1f %12.6g %-13s %s",
                std::string(to_string(r.lean)).c_str(), r.n_baseline, r.n_system, r.median_baseline,
                r.median_system, r.test.u, r.test.p_two_sided, std::string(analytics::to_string(r.test.method)).c_str(),
                r.significant ? "*" : (r.test.degenerate ? "degenerate" : ""));
  return line;
}

int serve(ServiceConfig config, std::ostream& out) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Service service(config, llm::make_provider(config.provider), context::make_search_provider(config.search));
  HttpServer server(service);
  const int port = server.bind(config.host, config.port);
  out << "listening on " << config.host << ":" << port << " data " << config.data_dir.string() << std::endl;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  // listen() also returns when the socket fails; wake the waiter either way.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kExitOk;
}

}  // namespace

int exit_code(ErrorCode code) {
  if (is_provider_error(code)) return kExitProvider;
  if (code == ErrorCode::IoError || code == ErrorCode::NotFound) return kExitIo;
  return kExitInvalidInput;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counterpoint: claims, counter-arguments, context, Q&A and debate for opinion articles"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::string fixtures;
  std::string search_fixtures;
  app.add_option("--config", config_file, "JSON config file");
  app.add_option("--fixtures", fixtures, "Mock provider fixture directory");
  app.add_option("--search-fixtures", search_fixtures, "Mock search fixture directory");

  InputOptions annotate_in;
  std::string annotate_out;
  std::string format = "full";
  auto* annotate_cmd = app.add_subcommand("annotate", "Detect claims and generate counter-arguments");
  add_input(annotate_cmd, annotate_in);
  annotate_cmd->add_option("--out", annotate_out, "Write the result here instead of standard output");
  annotate_cmd->add_option("--format", format, "full or spans-only")->check(CLI::IsMember({"full", "spans-only"}));

  InputOptions context_in;
  auto* context_cmd = app.add_subcommand("context", "Search-grounded context summary");
  add_input(context_cmd, context_in);

  InputOptions qa_in;
  std::string question;
  auto* qa_cmd = app.add_subcommand("qa", "Answer one question about the article");
  add_input(qa_cmd, qa_in);
  qa_cmd->add_option("--question", question, "Question to answer")->required();

  std::string study_file;
  std::string measure = "claims";
  bool analyze_json = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Mann-Whitney U comparison of study conditions per lean");
  analyze_cmd->add_option("study", study_file, "Study CSV")->required();
  analyze_cmd->add_option("--measure", measure, "claims, counters, rate, counters_rate or stance");
  analyze_cmd->add_flag("--json", analyze_json, "Emit JSON instead of a table");

  int port = -1;
  std::string data_dir;
  std::string host;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--port", port, "Port (0 picks a free one)");
  serve_cmd->add_option("--data-dir", data_dir, "Artifact directory");
  serve_cmd->add_option("--host", host, "Bind address");

  InputOptions digest_in;
  auto* digest_cmd = app.add_subcommand("digest", "Print the fixture key of an article body");
  add_input(digest_cmd, digest_in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: Usage: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    ServiceConfig config = ServiceConfig::load(config_file.empty() ? std::nullopt
                                                                   : std::optional<std::filesystem::path>(config_file));
    if (!fixtures.empty()) {
      config.provider.kind = "mock";
      config.provider.fixtures_dir = fixtures;
    }
    if (!search_fixtures.empty()) {
      config.search.kind = "mock";
      config.search.fixtures_dir = search_fixtures;
    }

    if (*serve_cmd) {
      if (port >= 0) config.port = port;
      if (!data_dir.empty()) config.data_dir = data_dir;
      if (!host.empty()) config.host = host;
      config.validate();
      return serve(config, out);
    }

    if (*analyze_cmd) {
      const auto rows =
          analytics::compare_conditions(analytics::load_study_csv(study_file), analytics::measure_from_string(measure));
      if (analyze_json) {
        Json j = Json::array();
        for (const auto& r : rows) j.push_back(to_json(r));
        out << j.dump(2) << "\n";
        return kExitOk;
      }
      out << "measure: " << analytics::to_string(analytics::measure_from_string(measure))
          << "  (Baseline vs System, two-sided, alpha = " << analytics::kAlpha << ")\n";
      char header[256];
      std::snprintf(header, sizeof header, "%-8s %8s %8s %10s %10s %8s %12s %-13s %s", "lean", "n_base", "n_sys",
                    "med_base", "med_sys", "U", "p", "method", "sig");
      out << header << "\n";
      for (const auto& r : rows) out << format_row(r) << "\n";
      return kExitOk;
    }

    if (*digest_cmd) {
      out << short_digest(load_input(digest_in).body()) << "\n";
      return kExitOk;
    }

    llm::Gateway gateway(llm::make_provider(config.provider), config.gateway);

    if (*annotate_cmd) {
      const Document doc = load_input(annotate_in);
      const auto annotation = annotate::annotate(doc, gateway, config.annotate);
      const Json j = format == "spans-only" ? spans_only_json(annotation) : to_json(annotation);
      const std::string text = j.dump(2) + "\n";
      if (annotate_out.empty()) {
        out << text;
      } else {
        write_file_atomic(annotate_out, text);
      }
      return kExitOk;
    }

    if (*context_cmd) {
      const Document doc = load_input(context_in);
      auto search = context::make_search_provider(config.search);
      const auto snippets = context::fetch_context(*search, doc.title(), config.context.max_snippets);
      out << to_json(context::summarize_context(doc, snippets, gateway, config.context)).dump(2) << "\n";
      return kExitOk;
    }

    if (*qa_cmd) {
      const Document doc = load_input(qa_in);
      const auto index = rag::build_index(doc, gateway, config.chunk);
      const auto conv = rag::answer(doc, index, rag::new_conversation(doc.id(), "cli"), question, gateway, config.qa);
      const auto& bot = conv.turns.back();
      out << Json{{"question", question}, {"answer", bot.text}, {"cited_chunks", bot.cited_chunks}}.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: IoError: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: IoError: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace counterpoint::service
