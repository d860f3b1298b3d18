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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "counterpoint/core/clock.hpp"
#include "counterpoint/core/conversation.hpp"
#include "counterpoint/core/document.hpp"
#include "counterpoint/llm/gateway.hpp"
#include "counterpoint/rag/index.hpp"

namespace counterpoint::rag {

struct QaTurn {
  Role role = Role::User;
  std::string text;
  std::vector<std::size_t> cited_chunks;  // bot turns only
  std::int64_t timestamp_ms = 0;
};

struct QaConversation {
  std::string conversation_id;
  std::string doc_id;
  std::vector<QaTurn> turns;
};

struct QaOptions {
  std::size_t k = 4;
  std::size_t history_turns = 6;
};

QaConversation new_conversation(const std::string& doc_id, const std::string& conversation_id);

// Roles alternate starting with User and the conversation ends on a Bot turn
// (or is empty).
bool well_formed(const QaConversation& conv);

// Last `window` turns rendered as "Reader: ..." / "Assistant: ..." lines.
std::string render_history(const std::vector<QaTurn>& turns, std::size_t window);

// Retrieves top-k chunks for `question`, asks the QaAnswer template and
// appends the user turn and the bot turn. On error the input conversation is
// returned unchanged to the caller (it is taken by value).
QaConversation answer(const Document& doc, const VectorIndex& index, QaConversation conv,
                      const std::string& question, const llm::Gateway& gateway, const QaOptions& options = {},
                      const Clock& clock = system_clock());

}  // namespace counterpoint::rag
