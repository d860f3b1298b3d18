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

#include "counterpoint/context/context.hpp"

#include <algorithm>

#include "counterpoint/annotate/normalize.hpp"
#include "counterpoint/core/digest.hpp"
#include "counterpoint/core/utf8.hpp"

namespace counterpoint::context {

namespace {

bool blank(std::string_view s) {
  const auto cps = utf8::decode(s);
  return std::all_of(cps.begin(), cps.end(), utf8::is_whitespace);
}

std::string format_snippets(const std::vector<SearchSnippet>& snippets) {
  std::string out;
  for (const auto& s : snippets) {
    out += "[" + std::to_string(s.rank) + "] " + s.title;
    if (!s.url.empty()) out += " (" + s.url + ")";
    out += "\n" + s.snippet + "\n\n";
  }
  return out;
}

std::string prefix_code_points(std::string_view text, std::size_t limit) {
  const auto offsets = utf8::code_point_offsets(text);
  if (offsets.size() - 1 <= limit) return std::string(text);
  return std::string(text.substr(0, offsets[limit]));
}

}  // namespace

std::string_view to_string(ExplanationMode mode) {
  return mode == ExplanationMode::Definition ? "Definition" : "Context";
}

std::vector<SearchSnippet> fetch_context(SearchProvider& provider, const std::string& title, std::size_t limit) {
  if (blank(title)) throw Error(ErrorCode::InvalidArgument, "search query (article title) is empty");
  std::vector<SearchSnippet> raw;
  try {
    raw = provider.search(title, limit);
  } catch (const Error& e) {
    throw Error(ErrorCode::SearchUnavailable, std::string("search failed: ") + e.what());
  }
  std::vector<SearchSnippet> out;
  for (auto& s : raw) {
    if (out.size() >= limit) break;
    if (blank(s.snippet)) continue;
    s.rank = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(s));
  }
  return out;
}

ContextSummary summarize_context(const Document& doc, const std::vector<SearchSnippet>& snippets,
                                 const llm::Gateway& gateway, const ContextOptions& options, const Clock& clock) {
  ContextSummary summary;
  summary.doc_id = doc.id();
  summary.query = doc.title();
  summary.snippets = snippets;
  summary.article_only = snippets.empty();
  const std::string material = summary.article_only
                                   ? prefix_code_points(doc.body(), options.article_only_max_code_points)
                                   : format_snippets(snippets);
  const std::string key = summary.article_only ? short_digest(doc.body()) : short_digest(doc.title());
  summary.summary_text =
      gateway.complete(llm::TemplateId::ContextSummarize, {{"title", doc.title()}, {"material", material}}, key).text;
  summary.generated_at_ms = clock();
  return summary;
}

ExplanationMode selection_mode(std::string_view selection) {
  const auto tokens = annotate::match_tokens(utf8::decode(selection));
  return tokens.size() == 1 ? ExplanationMode::Definition : ExplanationMode::Context;
}

SelectionExplanation explain_selection(const Document& doc, Span span, const llm::Gateway& gateway,
                                       const ContextOptions& options) {
  const std::string selected(doc.text(span));
  const Span window{span.start > options.selection_window ? span.start - options.selection_window : 0,
                    std::min(doc.length(), span.end + options.selection_window)};
  SelectionExplanation out;
  out.selected_text = selected;
  out.span = span;
  out.mode = selection_mode(selected);
  out.explanation = gateway
                        .complete(llm::TemplateId::SelectionExplain,
                                  {{"title", doc.title()}, {"selection", selected}, {"context", std::string(doc.text(window))}},
                                  short_digest(selected))
                        .text;
  return out;
}

}  // namespace counterpoint::context
