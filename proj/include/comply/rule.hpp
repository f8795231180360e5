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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "comply/labels.hpp"

namespace comply {

enum class Pattern { ante_occ, ante_abs, cons_occ, cons_abs };
enum class Connector { antecedence, consequence };

/// Which endpoint of a message a rule node refers to. `none` marks a plain
/// activity node.
enum class MessageRole { none, send, receive, either };

std::string to_string(Pattern pattern);
std::string to_string(Connector connector);
std::string to_string(MessageRole role);
Pattern pattern_from_string(std::string_view text);
Connector connector_from_string(std::string_view text);
MessageRole message_role_from_string(std::string_view text);

struct RuleNode {
  std::string id;
  /// Activity label, or message name when `role != none`.
  std::string activity;
  std::string partner;
  Pattern pattern = Pattern::ante_occ;
  MessageRole role = MessageRole::none;

  bool is_message() const { return role != MessageRole::none; }
  bool is_antecedence() const {
    return pattern == Pattern::ante_occ || pattern == Pattern::ante_abs;
  }
  bool is_absence() const {
    return pattern == Pattern::ante_abs || pattern == Pattern::cons_abs;
  }
  /// Canonical label in atomic mode.
  EventLabel canonical_label() const;
  /// True if an event with this label is an occurrence of the node. Message
  /// nodes match atomic labels regardless of role; async labels by endpoint.
  bool matches(std::string_view label) const;

  friend bool operator==(const RuleNode&, const RuleNode&) = default;
};

struct RuleEdge {
  std::string from;
  std::string to;
  Connector connector = Connector::consequence;

  friend bool operator==(const RuleEdge&, const RuleEdge&) = default;
};

struct ComplianceRule {
  std::string id;
  std::vector<RuleNode> nodes;
  std::vector<RuleEdge> edges;

  std::optional<std::size_t> index_of(std::string_view node_id) const;
  const RuleNode& node(std::string_view node_id) const;
  std::size_t count(Pattern pattern) const;
  /// Atomic-mode labels of all nodes, sorted.
  std::vector<EventLabel> labels() const;
  /// Partners referenced by nodes, sorted.
  std::vector<std::string> partners() const;

  friend bool operator==(const ComplianceRule&, const ComplianceRule&) = default;
};

/// Time points are positions in the vector.
using Trace = std::vector<EventLabel>;

struct ValidationReport {
  std::vector<std::string> findings;
  bool ok() const { return findings.empty(); }
};

ValidationReport validate_rule(const ComplianceRule& rule);
/// Throws InputError listing the findings when the rule is malformed.
void require_well_formed(const ComplianceRule& rule);

/// One assignment of trace positions to the rule's antecedence-occurrence
/// nodes that triggers it.
struct Activation {
  std::vector<std::string> node_ids;
  std::vector<std::size_t> positions;
  bool satisfied = false;
};

bool evaluate_rule(const Trace& trace, const ComplianceRule& rule);
std::vector<Activation> activations(const Trace& trace, const ComplianceRule& rule);

using Letter = std::uint16_t;

/// A rule bound to a fixed alphabet so traces can be evaluated as letter
/// indices. Evaluation is the quantifier semantics: every activation must
/// admit a consequence assignment with no absence witness. Thread-safe.
class RuleMatcher {
 public:
  RuleMatcher(const ComplianceRule& rule, std::span<const EventLabel> alphabet);

  bool holds(std::span<const Letter> trace) const;
  std::vector<Activation> activations(std::span<const Letter> trace) const;

 private:
  struct Workspace;
  bool search_activations(Workspace& ws, std::size_t depth,
                          std::vector<Activation>* out) const;
  bool search_consequences(Workspace& ws, std::size_t depth) const;
  bool has_absence_witness(const Workspace& ws, std::size_t node) const;
  bool try_place(const Workspace& ws, std::size_t node, std::size_t pos) const;
  void prepare(Workspace& ws, std::span<const Letter> trace) const;

  std::vector<std::string> node_ids_;
  std::size_t num_letters_ = 0;
  std::vector<std::vector<bool>> matches_;  // node -> letter -> match
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<std::vector<std::size_t>> succs_;
  std::vector<std::size_t> ante_occ_;
  std::vector<std::size_t> ante_abs_;
  std::vector<std::size_t> cons_occ_;
  std::vector<std::size_t> cons_abs_;
};

}  // namespace comply
