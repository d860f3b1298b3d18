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

#include "counterpoint/llm/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "counterpoint/error.hpp"

namespace counterpoint::llm {

namespace {

struct Placeholder {
  std::size_t begin;  // position of "{{"
  std::size_t end;    // one past "}}"
  std::string_view name;
};

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::optional<Placeholder> next_placeholder(std::string_view text, std::size_t from) {
  while (true) {
    const std::size_t open = text.find("{{", from);
    if (open == std::string_view::npos) return std::nullopt;
    const std::size_t close = text.find("}}", open + 2);
    if (close == std::string_view::npos) return std::nullopt;
    const std::string_view name = text.substr(open + 2, close - open - 2);
    if (is_identifier(name)) return Placeholder{open, close + 2, name};
    from = open + 1;
  }
}

}  // namespace

std::string_view to_string(TemplateId id) {
  switch (id) {
    case TemplateId::ClaimExtract: return "ClaimExtract";
    case TemplateId::CounterGen: return "CounterGen";
    case TemplateId::ContextSummarize: return "ContextSummarize";
    case TemplateId::QaAnswer: return "QaAnswer";
    case TemplateId::DebateRebut: return "DebateRebut";
    case TemplateId::DebateRegenerate: return "DebateRegenerate";
    case TemplateId::SelectionExplain: return "SelectionExplain";
  }
  return "Unknown";
}

TemplateId template_from_string(std::string_view name) {
  for (TemplateId id : kAllTemplates) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown template: " + std::string(name));
}

std::vector<std::string> PromptTemplate::placeholders() const {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (auto ph = next_placeholder(text, pos)) {
    if (std::find(names.begin(), names.end(), ph->name) == names.end()) names.emplace_back(ph->name);
    pos = ph->end;
  }
  return names;
}

std::string render(const PromptTemplate& tmpl, const Bindings& bindings) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.exemplars.size(); ++i) {
    out += "Example " + std::to_string(i + 1) + ":\n" + tmpl.exemplars[i] + "\n\n";
  }
  const std::string_view text = tmpl.text;
  std::size_t pos = 0;
  while (auto ph = next_placeholder(text, pos)) {
    const auto it = bindings.find(ph->name);
    if (it == bindings.end()) {
      throw Error(ErrorCode::MissingPlaceholder, std::string(to_string(tmpl.id)) +
                                                     ": no binding for {{" + std::string(ph->name) + "}}");
    }
    out.append(text.substr(pos, ph->begin - pos));
    out.append(it->second);
    pos = ph->end;
  }
  out.append(text.substr(pos));
  return out;
}

const PromptTemplate& TemplateCatalog::get(TemplateId id) const {
  const auto it = templates_.find(id);
  if (it == templates_.end()) {
    throw Error(ErrorCode::InvalidArgument, "template not in catalog: " + std::string(to_string(id)));
  }
  return it->second;
}

void TemplateCatalog::set(PromptTemplate tmpl) {
  const TemplateId id = tmpl.id;
  templates_.insert_or_assign(id, std::move(tmpl));
}

TemplateCatalog TemplateCatalog::defaults() {
  TemplateCatalog catalog;

  catalog.set({TemplateId::ClaimExtract,
               "You find the main claims in an opinion article. Return each claim exactly as it is "
               "written in the article, copied word for word, one claim per line. Do not paraphrase, "
               "summarize or number the claims. If the article makes no claims, answer NONE.\n\n"
               "Article:\n{{article}}\n\nClaims:",
               {}});

  catalog.set({TemplateId::CounterGen,
               "Write a counter-argument for each numbered claim below, taken from the article "
               "titled \"{{title}}\". Each counter-argument must directly challenge its claim with "
               "evidence or reasoning, and its first sentence must summarize the rebuttal.\n"
               "Answer with a JSON array and nothing else, one object per claim, in the form "
               "[{\"claim\": <claim number>, \"counter\": \"<counter-argument>\"}].\n\n"
               "Claims:\n{{claims}}",
               {
                   "Claim: Raising the minimum wage will destroy small businesses.\n"
                   "Counter-argument: Past increases had small effects on employment. Higher pay "
                   "also lowers staff turnover, which small employers name as one of their largest "
                   "hidden costs.",
                   "Claim: Remote work makes employees less productive.\n"
                   "Counter-argument: Output measures in several large firms stayed flat or rose "
                   "after the switch to remote work. Commuting time saved is often reinvested in work.",
                   "Claim: Building more highways is the only way to end traffic congestion.\n"
                   "Counter-argument: New road capacity tends to fill with new trips within a few "
                   "years. Cities that invested in transit and pricing cut congestion without "
                   "adding lanes.",
               }});

  catalog.set({TemplateId::ContextSummarize,
               "Give the reader neutral background on the issue discussed in the article titled "
               "\"{{title}}\". Use only the material below. Do not take a side and do not present "
               "the article's opinions as facts. Write one short paragraph.\n\n"
               "Material:\n{{material}}\n\nSummary:",
               {}});

  catalog.set({TemplateId::QaAnswer,
               "Answer the reader's question about the article using only the passages below. If "
               "the passages do not contain the answer, say that the article does not cover it.\n\n"
               "Passages:\n{{passages}}\n\nConversation so far:\n{{history}}\n\n"
               "Question: {{question}}\nAnswer:",
               {}});

  catalog.set({TemplateId::DebateRebut,
               "You are debating a reader about the article titled \"{{title}}\". The reader holds "
               "this position: \"{{position}}\". Debate the other side of the reader's argument and "
               "keep to that side for the whole conversation. Be as brief and persuasive as "
               "possible.\n\nArticle excerpt:\n{{article}}\n\nConversation:\n{{history}}\nYou:",
               {}});

  catalog.set({TemplateId::DebateRegenerate,
               "The reader was not convinced by your last reply in a debate about the article titled "
               "\"{{title}}\". Find another way to persuade them, still arguing against their "
               "position: \"{{position}}\". Do not reuse the arguments of the rejected replies. Be as "
               "brief and persuasive as possible.\n\nArticle excerpt:\n{{article}}\n\n"
               "Conversation:\n{{history}}\n\nRejected replies:\n{{rejected}}\n\n"
               "Attempt: {{attempt}}\nYou:",
               {}});

  catalog.set({TemplateId::SelectionExplain,
               "The reader selected this text in the article titled \"{{title}}\":\n"
               "\"{{selection}}\"\n\nSurrounding text:\n{{context}}\n\n"
               "If it's one word, provide its definition. If it's more than that, use your "
               "knowledge to give additional context on the text.",
               {}});

  return catalog;
}

}  // namespace counterpoint::llm
