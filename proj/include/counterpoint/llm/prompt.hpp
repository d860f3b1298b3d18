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

namespace counterpoint::llm {

enum class TemplateId {
  ClaimExtract,
  CounterGen,
  ContextSummarize,
  QaAnswer,
  DebateRebut,
  DebateRegenerate,
  SelectionExplain,
};

inline constexpr TemplateId kAllTemplates[] = {
    TemplateId::ClaimExtract,     TemplateId::CounterGen,  TemplateId::ContextSummarize,
    TemplateId::QaAnswer,         TemplateId::DebateRebut, TemplateId::DebateRegenerate,
    TemplateId::SelectionExplain,
};

std::string_view to_string(TemplateId id);
TemplateId template_from_string(std::string_view name);

using Bindings = std::map<std::string, std::string, std::less<>>;

// Placeholders are written {{name}} with name matching [A-Za-z_][A-Za-z0-9_]*.
// Any other brace sequence is literal text.
struct PromptTemplate {
  TemplateId id = TemplateId::ClaimExtract;
  std::string text;
  std::vector<std::string> exemplars;

  // Distinct placeholder names in order of first appearance.
  std::vector<std::string> placeholders() const;
};

// Exemplars first, in catalog order, then the substituted body. Values are
// inserted verbatim and never re-expanded. Throws MissingPlaceholder.
std::string render(const PromptTemplate& tmpl, const Bindings& bindings);

class TemplateCatalog {
 public:
  static TemplateCatalog defaults();

  const PromptTemplate& get(TemplateId id) const;
  void set(PromptTemplate tmpl);

 private:
  std::map<TemplateId, PromptTemplate> templates_;
};

}  // namespace counterpoint::llm
