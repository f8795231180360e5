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

#include <filesystem>
#include <vector>

#include "json.hpp"

#include "comply/rule.hpp"

namespace comply {

/// {"id", "nodes":[{"id","activity","partner","pattern","role"?}],
///  "edges":[{"from","to","connector"}]}
ComplianceRule rule_from_json(const nlohmann::json& doc);
nlohmann::json rule_to_json(const ComplianceRule& rule);

ComplianceRule load_rule(const std::filesystem::path& path);

/// Accepts a single rule, an array of rules, or a decomposition report
/// (whose "assertions" entries carry a "rule" object).
std::vector<ComplianceRule> load_rules(const std::filesystem::path& path);
std::vector<ComplianceRule> rules_from_json(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace comply
