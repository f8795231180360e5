// Copyright 2026 The comply Authors
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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "comply/rule.hpp"

namespace comply {

/// One hypothesis of a decomposition theorem. Node activities are template
/// variables; `owner` names the variable whose partner must check it, or a
/// free partner variable.
struct PremiseTemplate {
  std::string owner;
  ComplianceRule rule;
};

/// A decomposition theorem: if every premise holds, the conclusion holds.
/// The conclusion doubles as the shape a GCR must have for the template to
/// apply. Placeholders stand for interactions chosen per choreography.
struct TheoremTemplate {
  std::string id;
  std::string title;
  ComplianceRule conclusion;
  std::vector<PremiseTemplate> premises;
  std::vector<std::string> placeholders;
  std::vector<std::string> free_partners;
  /// Only sound when no letter repeats within a trace.
  bool loop_free = false;
  /// Rule checked when validating the converse; defaults to the premises.
  std::optional<ComplianceRule> converse;

  /// Conclusion variables followed by placeholders, sorted.
  std::vector<std::string> letters() const;
};

/// Ids of the built-in templates, in a fixed order.
std::vector<std::string> template_ids();
/// Looks up a template. "T4(n,m)" builds the generic chaining theorem;
/// "T4" means T4(2,2). Throws InputError for unknown ids.
TheoremTemplate theorem_template(std::string_view id);
TheoremTemplate chaining_template(int n, int m);

/// Maps template variables to GCR node indices when the GCR has exactly
/// the template's shape (node patterns, edges and connectors).
std::optional<std::map<std::string, std::size_t>> match_shape(const TheoremTemplate& tpl,
                                                              const ComplianceRule& gcr);

}  // namespace comply
