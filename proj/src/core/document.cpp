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

#include "counterpoint/core/document.hpp"

#include <algorithm>
#include <cctype>

#include "counterpoint/core/digest.hpp"
#include "counterpoint/core/utf8.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint {

namespace {

bool is_dropped_control(char32_t cp) {
  if (cp == U'\n' || cp == U'\t') return false;
  return cp < 0x20 || cp == 0x7F || (cp >= 0x80 && cp <= 0x9F);
}

bool all_whitespace(std::string_view text) {
  const auto cps = utf8::decode(text);
  return std::all_of(cps.begin(), cps.end(), utf8::is_whitespace);
}

std::string trim_ascii(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

std::string_view to_string(Lean lean) {
  switch (lean) {
    case Lean::Left: return "Left";
    case Lean::Right: return "Right";
    case Lean::Neutral: return "Neutral";
    case Lean::Unknown: return "Unknown";
  }
  return "Unknown";
}

Lean lean_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "left") return Lean::Left;
  if (lower == "right") return Lean::Right;
  if (lower == "neutral") return Lean::Neutral;
  if (lower == "unknown") return Lean::Unknown;
  throw Error(ErrorCode::InvalidArgument, "unknown lean: " + std::string(name));
}

Document::Document(std::string id, std::string title, std::string body, Lean lean,
                   std::optional<std::string> source_url)
    : id_(std::move(id)),
      title_(std::move(title)),
      body_(std::move(body)),
      lean_(lean),
      source_url_(std::move(source_url)),
      offsets_(utf8::code_point_offsets(body_)) {}

Document Document::restore(std::string doc_id, std::string title, std::string body, Lean lean,
                           std::optional<std::string> source_url) {
  if (normalize_body(body) != body || all_whitespace(body)) {
    throw Error(ErrorCode::CorruptArtifact, "stored body is not normalized");
  }
  if (make_doc_id(body, title) != doc_id) {
    throw Error(ErrorCode::CorruptArtifact, "doc_id does not match content: " + doc_id);
  }
  return ingest_document(body, std::move(title), lean, std::move(source_url));
}

std::string_view Document::text(Span span) const {
  if (!valid(span)) {
    throw Error(ErrorCode::SpanOutOfRange,
                "span [" + std::to_string(span.start) + "," + std::to_string(span.end) +
                    ") outside body of length " + std::to_string(length()));
  }
  const std::size_t begin = offsets_[span.start];
  return std::string_view(body_).substr(begin, offsets_[span.end] - begin);
}

std::string normalize_body(std::string_view raw) {
  std::u32string cps = utf8::decode(raw);
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (i == 0 && cp == 0xFEFF) continue;
    if (cp == U'\r') {
      out.push_back('\n');
      if (i + 1 < cps.size() && cps[i + 1] == U'\n') ++i;
      continue;
    }
    if (is_dropped_control(cp)) continue;
    utf8::append(out, cp);
  }
  return out;
}

Document ingest_document(std::string_view raw, std::string title, Lean lean,
                         std::optional<std::string> source_url) {
  std::string body = normalize_body(raw);
  if (all_whitespace(body)) throw Error(ErrorCode::EmptyDocument, "document body is empty");
  title = trim_ascii(normalize_body(title));
  for (char& c : title) {
    if (c == '\n' || c == '\t') c = ' ';
  }
  std::string id = make_doc_id(body, title);
  return Document(std::move(id), std::move(title), std::move(body), lean, std::move(source_url));
}

std::string make_doc_id(std::string_view body, std::string_view title) {
  std::string material;
  material.reserve(body.size() + title.size() + 1);
  material.append(title);
  material.push_back('\0');
  material.append(body);
  return short_digest(material);
}

StanceRating StanceRating::make(std::string topic, int value) {
  if (value < 1 || value > 5) {
    throw Error(ErrorCode::InvalidArgument, "stance rating must be in 1..5, got " + std::to_string(value));
  }
  return StanceRating{std::move(topic), value};
}

}  // namespace counterpoint

#include "counterpoint/core/conversation.hpp"

namespace counterpoint {

std::string_view to_string(Role role) { return role == Role::User ? "User" : "Bot"; }

Role role_from_string(std::string_view name) {
  if (name == "User") return Role::User;
  if (name == "Bot") return Role::Bot;
  throw Error(ErrorCode::ParseError, "unknown role: " + std::string(name));
}

}  // namespace counterpoint
