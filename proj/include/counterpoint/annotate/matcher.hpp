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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "counterpoint/annotate/normalize.hpp"
#include "counterpoint/core/document.hpp"

namespace counterpoint::annotate {

enum class MatchKind { Exact, Normalized, Fuzzy };

std::string_view to_string(MatchKind kind);
MatchKind match_kind_from_string(std::string_view name);

struct ClaimSpan {
  std::string claim_id;
  std::string claim_text;
  Span span;
  MatchKind match_kind = MatchKind::Exact;
  double match_score = 1.0;

  bool operator==(const ClaimSpan&) const = default;
};

struct MatchOptions {
  double fuzzy_threshold = 0.85;
  // Fuzzy windows cover 1..max_window_sentences consecutive sentences.
  std::size_t max_window_sentences = 3;
  bool parallel = true;
};

std::string make_claim_id(std::string_view claim_text);

// Sentences of `body` as trimmed spans. A sentence ends at a run of
// terminators (. ! ? and the ellipsis, plus closing quotes and brackets)
// followed by whitespace, or at a newline.
std::vector<Span> split_sentences(std::u32string_view body);

// Grows `span` over the closing punctuation that directly follows it when
// that run ends a sentence, e.g. "high" -> "high." in "too high. Growth".
Span extend_sentence_punctuation(std::u32string_view body, Span span);

// Aligns claims to a single document: exact substring, then normalized
// substring projected back to source offsets, then best sentence window by
// token LCS similarity. The first occurrence wins in the first two tiers.
class SpanMatcher {
 public:
  explicit SpanMatcher(const Document& doc, MatchOptions options = {});

  // std::nullopt is the NoMatch outcome. Throws InvalidArgument on a blank
  // claim.
  std::optional<ClaimSpan> match(std::string_view claim) const;

  std::optional<Span> find_exact(std::string_view claim) const;
  std::optional<Span> find_normalized(std::string_view claim) const;
  // Best window and its similarity, regardless of the threshold.
  std::optional<std::pair<Span, double>> best_fuzzy_window(std::string_view claim) const;

  const std::vector<Span>& sentences() const { return sentences_; }
  const MatchOptions& options() const { return options_; }

 private:
  const Document& doc_;
  MatchOptions options_;
  std::u32string body_;
  NormalizedText normalized_;
  std::vector<Span> sentences_;
  std::vector<std::vector<std::u32string>> sentence_tokens_;
};

inline std::optional<ClaimSpan> match_span(const Document& doc, std::string_view claim,
                                           const MatchOptions& options = {}) {
  return SpanMatcher(doc, options).match(claim);
}

// Keeps spans greedily by (higher score, earlier start, longer span, claim
// text) and drops anything overlapping a kept span. Output is sorted by start
// and does not depend on input order.
std::vector<ClaimSpan> resolve_overlaps(std::vector<ClaimSpan> spans);

}  // namespace counterpoint::annotate
