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

#include "json.hpp"

#include "comply/process.hpp"

namespace comply {

/// Block grammar: {"seq":[...]} | {"xor":[...]} | {"and":[...]} |
/// {"loop":{"body":...,"maxUnroll":k}} |
/// {"act":{"label","kind","msg"?,"peer"?}}. A bare string is a private
/// task. Send and receive activities default their message to the label.
ProcessGraph process_from_json(const nlohmann::json& doc);
nlohmann::json process_to_json(const ProcessGraph& model);

/// {"partners","private","public","choreography","psi","gamma","xi"}; gamma
/// entries are [sender, node, receiver, node] and are derived by message
/// name when the key is absent.
Choreography choreography_from_json(const nlohmann::json& doc);
nlohmann::json choreography_to_json(const Choreography& chor);
Choreography load_choreography(const std::filesystem::path& path);

}  // namespace comply
