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

#include "counterpoint/error.hpp"

namespace counterpoint {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::SpanOutOfRange: return "SpanOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingPlaceholder: return "MissingPlaceholder";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::ContentRefused: return "ContentRefused";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::EmptyCompletion: return "EmptyCompletion";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::CounterParseFailure: return "CounterParseFailure";
    case ErrorCode::SearchUnavailable: return "SearchUnavailable";
    case ErrorCode::InvalidChunkParams: return "InvalidChunkParams";
    case ErrorCode::EmptyIndex: return "EmptyIndex";
    case ErrorCode::SessionClosed: return "SessionClosed";
    case ErrorCode::NotABotTurn: return "NotABotTurn";
    case ErrorCode::RegenerationLimitExceeded: return "RegenerationLimitExceeded";
    case ErrorCode::DuplicateRegeneration: return "DuplicateRegeneration";
    case ErrorCode::OutOfOrderEvent: return "OutOfOrderEvent";
    case ErrorCode::UnmatchedExit: return "UnmatchedExit";
    case ErrorCode::DuplicateEnter: return "DuplicateEnter";
    case ErrorCode::EmptySession: return "EmptySession";
    case ErrorCode::NonPositiveDuration: return "NonPositiveDuration";
    case ErrorCode::MissingCondition: return "MissingCondition";
    case ErrorCode::UnknownSchemaVersion: return "UnknownSchemaVersion";
    case ErrorCode::CorruptArtifact: return "CorruptArtifact";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_provider_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ProviderUnavailable:
    case ErrorCode::ContentRefused:
    case ErrorCode::Timeout:
    case ErrorCode::EmptyCompletion:
    case ErrorCode::SearchUnavailable:
    case ErrorCode::DuplicateRegeneration:
      return true;
    default:
      return false;
  }
}

}  // namespace counterpoint
