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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "counterpoint/context/search.hpp"
#include "counterpoint/core/clock.hpp"
#include "counterpoint/core/document.hpp"
#include "counterpoint/llm/gateway.hpp"

namespace counterpoint::context {

struct ContextSummary {
  std::string doc_id;
  std::string query;  // the article title
  std::vector<SearchSnippet> snippets;
  std::string summary_text;
  bool article_only = false;
  std::int64_t generated_at_ms = 0;

  bool operator==(const ContextSummary&) const = default;
};

enum class ExplanationMode { Definition, Context };

std::string_view to_string(ExplanationMode mode);

struct SelectionExplanation {
  std::string selected_text;
  Span span;
  ExplanationMode mode = ExplanationMode::Context;
  std::string explanation;

  bool operator==(const SelectionExplanation&) const = default;
};

struct ContextOptions {
  std::size_t max_snippets = 5;
  std::size_t selection_window = 200;  // code points on each side
  std::size_t article_only_max_code_points = 8000;
};

// Top `limit` non-empty snippets for `title`, ranked 1..k. Any provider
// failure becomes SearchUnavailable.
std::vector<SearchSnippet> fetch_context(SearchProvider& provider, const std::string& title, std::size_t limit = 5);

// Summarizes the snippets, or the article itself when there are none
// (flagged article_only).
ContextSummary summarize_context(const Document& doc, const std::vector<SearchSnippet>& snippets,
                                 const llm::Gateway& gateway, const ContextOptions& options = {},
                                 const Clock& clock = system_clock());

// Definition for exactly one token once edge punctuation is trimmed,
// Context otherwise.
ExplanationMode selection_mode(std::string_view selection);

SelectionExplanation explain_selection(const Document& doc, Span span, const llm::Gateway& gateway,
                                       const ContextOptions& options = {});

}  // namespace counterpoint::context
