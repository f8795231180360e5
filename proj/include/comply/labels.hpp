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
#include <string_view>
#include <vector>

namespace comply {

/// Canonical event label. Forms:
///   act:<partner>.<label>   non-interaction activity
///   msg:<name>              message, atomic interaction mode
///   msg:<name>!<sender>     send event, async mode
///   msg:<name>?<receiver>   receive event, async mode
/// Activities without a partner (abstract theorem alphabets) use the bare
/// label. Labels order lexicographically.
using EventLabel = std::string;

enum class InteractionMode { atomic, async };

std::string to_string(InteractionMode mode);
InteractionMode interaction_mode_from_string(std::string_view text);

EventLabel activity_label(std::string_view partner, std::string_view activity);
EventLabel message_label(std::string_view message);
EventLabel send_label(std::string_view message, std::string_view sender);
EventLabel receive_label(std::string_view message, std::string_view receiver);

/// Parsed view of a message label. `endpoint` is '\0' for atomic labels.
struct MessageLabelParts {
  std::string name;
  char endpoint = '\0';
  std::string partner;
};

bool is_message_label(std::string_view label);
/// Requires is_message_label(label).
MessageLabelParts parse_message_label(std::string_view label);

/// Sorted, de-duplicated copy.
std::vector<EventLabel> normalize_alphabet(std::vector<EventLabel> labels);

}  // namespace comply
