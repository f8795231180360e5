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

#include <string>

#include "json.hpp"

#include "comply/decomposition.hpp"
#include "comply/theorem.hpp"
#include "comply/verification.hpp"

namespace comply {

/// Report rendering. `timing` adds wall-clock fields, which are the only
/// parts of a report that vary between identical runs.
nlohmann::json trace_to_json(const Trace& trace);
nlohmann::json sync_to_json(const SyncMessage& sync);
SyncMessage sync_from_json(const nlohmann::json& doc);
nlohmann::json message_node_to_json(const MessageNode& node);
MessageNode message_node_from_json(const nlohmann::json& doc);
nlohmann::json premise_instance_to_json(const PremiseInstance& inst);
PremiseInstance premise_instance_from_json(const nlohmann::json& doc);

nlohmann::json assertion_to_json(const Assertion& assertion);
Assertion assertion_from_json(const nlohmann::json& doc);
nlohmann::json decomposition_to_json(const Decomposition& d);
/// The updated choreography is not part of the report.
Decomposition decomposition_from_json(const nlohmann::json& doc);

nlohmann::json verdict_to_json(const Verdict& v, bool timing = true);
nlohmann::json theorem_result_to_json(const TheoremResult& r, bool timing = true);

std::string decomposition_text(const Decomposition& d);
std::string verdict_text(const Verdict& v);
std::string rule_text(const ComplianceRule& rule);

}  // namespace comply
