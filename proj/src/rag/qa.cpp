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

#include "counterpoint/rag/qa.hpp"

#include <algorithm>

#include "counterpoint/core/digest.hpp"
#include "counterpoint/core/utf8.hpp"
#include "counterpoint/error.hpp"
#include "counterpoint/rag/retrieval.hpp"

namespace counterpoint::rag {

namespace {

bool blank(std::string_view s) {
  const auto cps = utf8::decode(s);
  return std::all_of(cps.begin(), cps.end(), utf8::is_whitespace);
}

}  // namespace

QaConversation new_conversation(const std::string& doc_id, const std::string& conversation_id) {
  return {conversation_id, doc_id, {}};
}

bool well_formed(const QaConversation& conv) {
  if (conv.turns.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < conv.turns.size(); ++i) {
    const Role want = i % 2 == 0 ? Role::User : Role::Bot;
    if (conv.turns[i].role != want) return false;
  }
  return true;
}

std::string render_history(const std::vector<QaTurn>& turns, std::size_t window) {
  if (turns.empty()) return "(none)";
  const std::size_t from = turns.size() > window ? turns.size() - window : 0;
  std::string out;
  for (std::size_t i = from; i < turns.size(); ++i) {
    out += turns[i].role == Role::User ? "Reader: " : "Assistant: ";
    out += turns[i].text;
    out += '\n';
  }
  return out;
}

QaConversation answer(const Document& doc, const VectorIndex& index, QaConversation conv,
                      const std::string& question, const llm::Gateway& gateway, const QaOptions& options,
                      const Clock& clock) {
  if (blank(question)) throw Error(ErrorCode::InvalidArgument, "question is empty");
  if (index.empty()) throw Error(ErrorCode::EmptyIndex, "vector index for " + doc.id() + " has no records");
  if (index.doc_id != doc.id()) throw Error(ErrorCode::InvalidArgument, "index belongs to a different document");
  if (!well_formed(conv)) throw Error(ErrorCode::InvalidArgument, "conversation does not alternate User/Bot");
  if (conv.doc_id.empty()) conv.doc_id = doc.id();

  const auto hits = retrieve(index, question, gateway, options.k);
  const auto chunks = chunk_document(doc, index.params);
  std::string passages;
  std::vector<std::size_t> cited;
  for (const auto& hit : hits) {
    if (hit.chunk_index >= chunks.size()) throw Error(ErrorCode::CorruptArtifact, "index refers to a missing chunk");
    passages += "[chunk " + std::to_string(hit.chunk_index) + "]\n" + chunks[hit.chunk_index].text + "\n\n";
    cited.push_back(hit.chunk_index);
  }
  const auto reply = gateway.complete(llm::TemplateId::QaAnswer,
                                      {{"passages", passages},
                                       {"history", render_history(conv.turns, options.history_turns)},
                                       {"question", question}},
                                      short_digest(question));
  const std::int64_t asked = clock();
  conv.turns.push_back({Role::User, question, {}, asked});
  conv.turns.push_back({Role::Bot, reply.text, std::move(cited), clock()});
  return conv;
}

}  // namespace counterpoint::rag
