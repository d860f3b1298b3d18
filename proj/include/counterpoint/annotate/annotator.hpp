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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "counterpoint/annotate/matcher.hpp"
#include "counterpoint/core/document.hpp"
#include "counterpoint/llm/gateway.hpp"

namespace counterpoint::annotate {

struct CounterArgument {
  std::string claim_id;
  std::string summary;
  std::string full_text;
  llm::TemplateId template_id = llm::TemplateId::CounterGen;
  std::string provider_id;

  bool operator==(const CounterArgument&) const = default;
};

struct AnnotationMetadata {
  std::size_t extracted = 0;
  // Claims with no acceptable span, in extraction order.
  std::vector<std::string> unmatched;
  // Claims that matched but lost to an overlapping span.
  std::vector<std::string> overlap_dropped;
  // Counters that had to be produced by a per-claim call.
  std::size_t per_claim_fallbacks = 0;

  bool operator==(const AnnotationMetadata&) const = default;
};

struct AnnotatedDocument {
  std::string doc_id;
  std::vector<ClaimSpan> claims;          // sorted by span.start
  std::vector<CounterArgument> counters;  // counters[i].claim_id == claims[i].claim_id
  AnnotationMetadata metadata;

  bool operator==(const AnnotatedDocument&) const = default;
};

struct AnnotateOptions {
  MatchOptions match;
  std::size_t summary_max_code_points = 240;
};

// Claim lines from an extractor reply: bullets and numbering removed, blank
// lines and a bare "NONE" ignored.
std::vector<std::string> parse_claim_list(std::string_view reply);

// Claim number -> counter text for entries of a batched reply. Looks for the
// outermost JSON array in the reply; entries with an out-of-range number or
// an empty counter are skipped. Returns nullopt if no array parses.
std::optional<std::map<std::size_t, std::string>> parse_counter_batch(std::string_view reply,
                                                                      std::size_t claim_count);

// First sentence of `text`, cut at `max_code_points`.
std::string summarize_counter(std::string_view text, std::size_t max_code_points = 240);

// Provider claims in reply order, deduplicated by normalized text. An empty
// reply means the article has no claims.
std::vector<std::string> extract_claims(const Document& doc, const llm::Gateway& gateway);

// One batched call for all claims; claims missing from the batched reply get
// their own call (concurrently). Output is aligned with `claims`.
std::vector<CounterArgument> generate_counters(const Document& doc, const std::vector<ClaimSpan>& claims,
                                               const llm::Gateway& gateway, const AnnotateOptions& options = {},
                                               std::size_t* fallback_calls = nullptr);

AnnotatedDocument annotate(const Document& doc, const llm::Gateway& gateway, const AnnotateOptions& options = {});

}  // namespace counterpoint::annotate
