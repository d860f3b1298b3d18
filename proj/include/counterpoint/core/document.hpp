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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace counterpoint {

enum class Lean { Left, Right, Neutral, Unknown };

std::string_view to_string(Lean lean);
// Case-insensitive; throws InvalidArgument for unknown names.
Lean lean_from_string(std::string_view name);

// Half-open range [start, end) of Unicode code points.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool overlaps(const Span& other) const { return start < other.end && other.start < end; }
  auto operator<=>(const Span&) const = default;
};

// Immutable article. Offsets everywhere in the code base are code-point
// indices into body().
class Document {
 public:
  // Rebuilds a document from persisted fields. Throws CorruptArtifact when the
  // id does not match the content.
  static Document restore(std::string doc_id, std::string title, std::string body, Lean lean,
                          std::optional<std::string> source_url);

  const std::string& id() const { return id_; }
  const std::string& title() const { return title_; }
  const std::string& body() const { return body_; }
  Lean lean() const { return lean_; }
  const std::optional<std::string>& source_url() const { return source_url_; }

  // Body length in code points.
  std::size_t length() const { return offsets_.size() - 1; }
  bool valid(Span span) const { return span.start < span.end && span.end <= length(); }
  std::size_t byte_offset(std::size_t code_point) const { return offsets_.at(code_point); }

  // Throws SpanOutOfRange.
  std::string_view text(Span span) const;

  bool operator==(const Document& other) const {
    return id_ == other.id_ && title_ == other.title_ && body_ == other.body_ &&
           lean_ == other.lean_ && source_url_ == other.source_url_;
  }

 private:
  friend Document ingest_document(std::string_view, std::string, Lean, std::optional<std::string>);
  Document(std::string id, std::string title, std::string body, Lean lean,
           std::optional<std::string> source_url);

  std::string id_;
  std::string title_;
  std::string body_;
  Lean lean_;
  std::optional<std::string> source_url_;
  std::vector<std::size_t> offsets_;
};

// Newlines become "\n", control characters other than newline and tab are
// dropped, malformed UTF-8 becomes U+FFFD and a leading BOM is removed.
// Everything else, including runs of whitespace, is kept verbatim.
std::string normalize_body(std::string_view raw);

// Throws EmptyDocument when nothing but whitespace survives normalization.
Document ingest_document(std::string_view raw, std::string title, Lean lean,
                         std::optional<std::string> source_url = std::nullopt);

std::string make_doc_id(std::string_view body, std::string_view title);

inline std::string_view span_text(const Document& doc, Span span) { return doc.text(span); }

struct StanceRating {
  std::string topic;
  int value = 3;

  // Throws InvalidArgument unless 1 <= value <= 5.
  static StanceRating make(std::string topic, int value);
  bool operator==(const StanceRating&) const = default;
};

}  // namespace counterpoint
