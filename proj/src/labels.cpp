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

#include "comply/labels.hpp"

#include <algorithm>

#include "comply/errors.hpp"

namespace comply {

std::string to_string(InteractionMode mode) {
  return mode == InteractionMode::atomic ? "atomic" : "async";
}

InteractionMode interaction_mode_from_string(std::string_view text) {
  if (text == "atomic") return InteractionMode::atomic;
  if (text == "async") return InteractionMode::async;
  throw InputError("unknown interaction mode '" + std::string(text) + "'");
}

EventLabel activity_label(std::string_view partner, std::string_view activity) {
  if (partner.empty()) return std::string(activity);
  std::string out = "act:";
  out.append(partner).append(".").append(activity);
  return out;
}

EventLabel message_label(std::string_view message) {
  return "msg:" + std::string(message);
}

EventLabel send_label(std::string_view message, std::string_view sender) {
  return "msg:" + std::string(message) + "!" + std::string(sender);
}

EventLabel receive_label(std::string_view message, std::string_view receiver) {
  return "msg:" + std::string(message) + "?" + std::string(receiver);
}

bool is_message_label(std::string_view label) { return label.starts_with("msg:"); }

MessageLabelParts parse_message_label(std::string_view label) {
  MessageLabelParts parts;
  std::string_view rest = label.substr(4);
  auto pos = rest.find_first_of("!?");
  if (pos == std::string_view::npos) {
    parts.name = std::string(rest);
    return parts;
  }
  parts.name = std::string(rest.substr(0, pos));
  parts.endpoint = rest[pos];
  parts.partner = std::string(rest.substr(pos + 1));
  return parts;
}

std::vector<EventLabel> normalize_alphabet(std::vector<EventLabel> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace comply
