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

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "comply/automaton.hpp"
#include "comply/labels.hpp"
#include "comply/rule.hpp"

namespace comply {

enum class ActivityKind { private_task, public_task, send, receive, interaction };
enum class BlockKind { activity, seq, xor_block, and_block, loop };

std::string to_string(ActivityKind kind);
ActivityKind activity_kind_from_string(std::string_view text);

/// Block-structured process model. Leaves are activities; `children` holds
/// the branches of Seq/Xor/And and the single body of a Loop.
struct ProcessGraph {
  BlockKind kind = BlockKind::seq;
  std::string label;
  ActivityKind activity = ActivityKind::private_task;
  std::string msg;   // send, receive, interaction
  std::string peer;  // receiver of a send, sender of a receive
  std::vector<ProcessGraph> children;
  int max_unroll = 2;

  bool is_activity() const { return kind == BlockKind::activity; }
  bool is_message() const {
    return is_activity() && (activity == ActivityKind::send || activity == ActivityKind::receive);
  }

  friend bool operator==(const ProcessGraph&, const ProcessGraph&) = default;
};

ProcessGraph task(std::string label, ActivityKind kind = ActivityKind::private_task);
ProcessGraph send_task(std::string label, std::string msg, std::string to);
ProcessGraph receive_task(std::string label, std::string msg, std::string from);
ProcessGraph interaction(std::string msg);
ProcessGraph seq(std::vector<ProcessGraph> children);
ProcessGraph xor_of(std::vector<ProcessGraph> branches);
ProcessGraph and_of(std::vector<ProcessGraph> branches);
ProcessGraph loop(ProcessGraph body, int max_unroll = 2);

/// Leaves in document order.
std::vector<const ProcessGraph*> activities(const ProcessGraph& model);
const ProcessGraph* find_activity(const ProcessGraph& model, std::string_view label);
/// True if the activity sits inside a Loop block or occurs more than once.
bool is_loop_free(const ProcessGraph& model, std::string_view label);

/// Event label an activity of `partner` produces.
EventLabel event_label(const ProcessGraph& activity, std::string_view partner, InteractionMode mode);
std::vector<EventLabel> model_alphabet(const ProcessGraph& model, std::string_view partner,
                                       InteractionMode mode);

/// Complete runs of length <= max_len, loops unrolled up to their bound.
std::set<Trace> enumerate_traces(const ProcessGraph& model, std::string_view partner,
                                 InteractionMode mode, std::size_t max_len);
/// Complete runs with loops kept as cycles. The alphabet is the model's own
/// unless `alphabet` is given, in which case it must contain the model's.
FiniteAutomaton model_to_automaton(const ProcessGraph& model, std::string_view partner,
                                   InteractionMode mode,
                                   std::optional<std::vector<EventLabel>> alphabet = std::nullopt);

/// Structural problems: empty loops, duplicate labels, message activities
/// without a message name or peer, peers that are not `partners`.
ValidationReport validate_model(const ProcessGraph& model, std::string_view partner,
                                const std::vector<std::string>& partners);

struct GammaLink {
  std::string sender;
  std::string send_node;
  std::string receiver;
  std::string receive_node;

  friend bool operator==(const GammaLink&, const GammaLink&) = default;
  friend auto operator<=>(const GammaLink&, const GammaLink&) = default;
};

struct MessageNode {
  std::string partner;
  std::string node;  // activity label in the partner's model
  std::string msg;
  ActivityKind kind = ActivityKind::send;
  std::string peer;

  MessageRole role() const {
    return kind == ActivityKind::send ? MessageRole::send : MessageRole::receive;
  }
  friend bool operator==(const MessageNode&, const MessageNode&) = default;
};

enum class ModelView { private_models, public_models };

struct Choreography {
  std::vector<std::string> partners;
  ProcessGraph choreography;
  std::map<std::string, ProcessGraph> private_models;
  std::map<std::string, ProcessGraph> public_models;
  /// partner -> (public node -> private node). Missing entries map a node
  /// to the private node of the same label.
  std::map<std::string, std::map<std::string, std::string>> psi;
  std::vector<GammaLink> gamma;
  std::map<std::string, std::vector<std::string>> xi;

  bool has_partner(std::string_view partner) const;
  /// Private model of a partner; throws InputError for unknown partners.
  const ProcessGraph& private_model(std::string_view partner) const;
  /// Public model, or the private model when none is declared.
  const ProcessGraph& public_model(std::string_view partner) const;
  const ProcessGraph& model(std::string_view partner, ModelView view) const;
  /// Send and receive activities of all private models, by partner then
  /// document order.
  std::vector<MessageNode> message_nodes() const;
  std::vector<MessageNode> message_nodes(std::string_view partner) const;
  /// Partner owning a non-interaction activity label, if unique.
  std::optional<std::string> owner_of(std::string_view activity) const;
  /// Full alphabet of the private (or public) composition.
  std::vector<EventLabel> alphabet(InteractionMode mode,
                                   ModelView view = ModelView::private_models) const;

  friend bool operator==(const Choreography&, const Choreography&) = default;
};

/// Links every send of message m to the receive of m at another partner.
std::vector<GammaLink> derive_gamma(const Choreography& chor);

ValidationReport check_consistency(const Choreography& chor);
ValidationReport check_compatibility(const Choreography& chor);

}  // namespace comply
