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

#include "counterpoint/annotate/matcher.hpp"

#include <algorithm>
#include <unordered_map>

#include "counterpoint/annotate/fuzzy_kernel.hpp"
#include "counterpoint/core/digest.hpp"
#include "counterpoint/core/utf8.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::annotate {

namespace {

bool is_terminator(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x2026; }

bool is_closer(char32_t cp) {
  switch (cp) {
    case U'"': case U'\'': case U')': case U']': case U'}':
    case 0x2019: case 0x201D: case 0xBB: case 0x203A:
      return true;
    default:
      return false;
  }
}

bool is_blank(std::string_view text) {
  const auto cps = utf8::decode(text);
  return std::all_of(cps.begin(), cps.end(), utf8::is_whitespace);
}

}  // namespace

std::string_view to_string(MatchKind kind) {
  switch (kind) {
    case MatchKind::Exact: return "Exact";
    case MatchKind::Normalized: return "Normalized";
    case MatchKind::Fuzzy: return "Fuzzy";
  }
  return "Exact";
}

MatchKind match_kind_from_string(std::string_view name) {
  if (name == "Exact") return MatchKind::Exact;
  if (name == "Normalized") return MatchKind::Normalized;
  if (name == "Fuzzy") return MatchKind::Fuzzy;
  throw Error(ErrorCode::ParseError, "unknown match kind: " + std::string(name));
}

std::string make_claim_id(std::string_view claim_text) { return "c" + short_digest(claim_text).substr(0, 12); }

std::vector<Span> split_sentences(std::u32string_view body) {
  std::vector<Span> out;
  const std::size_t n = body.size();
  std::size_t i = 0;
  while (i < n) {
    while (i < n && utf8::is_whitespace(body[i])) ++i;
    if (i >= n) break;
    const std::size_t start = i;
    std::size_t end = n;
    while (i < n) {
      if (body[i] == U'\n') {
        end = i;
        break;
      }
      if (is_terminator(body[i])) {
        std::size_t j = i;
        while (j < n && (is_terminator(body[j]) || is_closer(body[j]))) ++j;
        if (j == n || utf8::is_whitespace(body[j])) {
          end = j;
          i = j;
          break;
        }
        i = j;
        continue;
      }
      ++i;
    }
    if (i >= n) end = n;
    std::size_t trimmed = end;
    while (trimmed > start && utf8::is_whitespace(body[trimmed - 1])) --trimmed;
    if (trimmed > start) out.push_back({start, trimmed});
    i = std::max(i, end);
  }
  return out;
}

Span extend_sentence_punctuation(std::u32string_view body, Span span) {
  std::size_t j = span.end;
  bool has_terminator = false;
  while (j < body.size() && (is_terminator(body[j]) || is_closer(body[j]))) {
    has_terminator = has_terminator || is_terminator(body[j]);
    ++j;
  }
  if (has_terminator && (j == body.size() || utf8::is_whitespace(body[j]))) span.end = j;
  return span;
}

SpanMatcher::SpanMatcher(const Document& doc, MatchOptions options)
    : doc_(doc),
      options_(options),
      body_(utf8::decode(doc.body())),
      normalized_(normalize_for_match(body_)),
      sentences_(split_sentences(body_)) {
  sentence_tokens_.reserve(sentences_.size());
  for (const Span& s : sentences_) {
    sentence_tokens_.push_back(match_tokens(std::u32string_view(body_).substr(s.start, s.length())));
  }
}

std::optional<Span> SpanMatcher::find_exact(std::string_view claim) const {
  const auto pos = doc_.body().find(claim);
  if (pos == std::string::npos) return std::nullopt;
  const std::size_t start = utf8::length(std::string_view(doc_.body()).substr(0, pos));
  return Span{start, start + utf8::length(claim)};
}

std::optional<Span> SpanMatcher::find_normalized(std::string_view claim) const {
  const auto needle = normalize_for_match(utf8::decode(claim)).text;
  if (needle.empty()) return std::nullopt;
  const auto pos = normalized_.text.find(needle);
  if (pos == std::u32string::npos) return std::nullopt;
  const Span projected{normalized_.origin[pos], normalized_.origin[pos + needle.size() - 1] + 1};
  return extend_sentence_punctuation(body_, projected);
}

std::optional<std::pair<Span, double>> SpanMatcher::best_fuzzy_window(std::string_view claim) const {
  const auto claim_tokens = match_tokens(utf8::decode(claim));
  if (claim_tokens.empty() || sentences_.empty()) return std::nullopt;

  std::unordered_map<std::u32string, int> vocab;
  TokenIds claim_ids;
  for (const auto& t : claim_tokens) {
    const auto [it, inserted] = vocab.try_emplace(t, static_cast<int>(vocab.size()));
    claim_ids.push_back(it->second);
  }
  std::vector<TokenIds> sentence_ids;
  sentence_ids.reserve(sentence_tokens_.size());
  for (const auto& tokens : sentence_tokens_) {
    TokenIds ids;
    ids.reserve(tokens.size());
    for (const auto& t : tokens) {
      const auto it = vocab.find(t);
      ids.push_back(it == vocab.end() ? -1 : it->second);
    }
    sentence_ids.push_back(std::move(ids));
  }

  // Windows ordered by (start sentence, width) so the first maximum is the
  // earliest, shortest window.
  std::vector<TokenIds> windows;
  std::vector<Span> window_spans;
  const std::size_t max_width = std::max<std::size_t>(1, options_.max_window_sentences);
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    TokenIds acc;
    for (std::size_t w = 0; w < max_width && i + w < sentences_.size(); ++w) {
      acc.insert(acc.end(), sentence_ids[i + w].begin(), sentence_ids[i + w].end());
      windows.push_back(acc);
      window_spans.push_back({sentences_[i].start, sentences_[i + w].end});
    }
  }
  const auto scores = options_.parallel ? score_windows_parallel(claim_ids, windows)
                                        : score_windows_serial(claim_ids, windows);
  std::size_t best = 0;
  for (std::size_t w = 1; w < scores.size(); ++w) {
    if (scores[w] > scores[best]) best = w;
  }
  return std::make_pair(window_spans[best], scores[best]);
}

std::optional<ClaimSpan> SpanMatcher::match(std::string_view claim) const {
  if (is_blank(claim)) throw Error(ErrorCode::InvalidArgument, "claim is blank");
  ClaimSpan result;
  result.claim_id = make_claim_id(claim);
  result.claim_text = std::string(claim);
  if (auto span = find_exact(claim)) {
    result.span = *span;
    result.match_kind = MatchKind::Exact;
    result.match_score = 1.0;
    return result;
  }
  if (auto span = find_normalized(claim)) {
    result.span = *span;
    result.match_kind = MatchKind::Normalized;
    result.match_score = 1.0;
    return result;
  }
  if (auto best = best_fuzzy_window(claim); best && best->second >= options_.fuzzy_threshold) {
    result.span = best->first;
    result.match_kind = MatchKind::Fuzzy;
    result.match_score = best->second;
    return result;
  }
  return std::nullopt;
}

std::vector<ClaimSpan> resolve_overlaps(std::vector<ClaimSpan> spans) {
  std::sort(spans.begin(), spans.end(), [](const ClaimSpan& a, const ClaimSpan& b) {
    if (a.match_score != b.match_score) return a.match_score > b.match_score;
    if (a.span.start != b.span.start) return a.span.start < b.span.start;
    if (a.span.length() != b.span.length()) return a.span.length() > b.span.length();
    return a.claim_text < b.claim_text;
  });
  std::vector<ClaimSpan> kept;
  for (auto& candidate : spans) {
    const bool clashes = std::any_of(kept.begin(), kept.end(),
                                     [&](const ClaimSpan& k) { return k.span.overlaps(candidate.span); });
    if (!clashes) kept.push_back(std::move(candidate));
  }
  std::sort(kept.begin(), kept.end(),
            [](const ClaimSpan& a, const ClaimSpan& b) { return a.span.start < b.span.start; });
  return kept;
}

}  // namespace counterpoint::annotate
