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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "comply/process.hpp"
#include "comply/rule.hpp"
#include "comply/templates.hpp"

namespace comply {

enum class DecompositionStatus { transitive, required_sync, failed };

std::string to_string(DecompositionStatus status);

struct Provenance {
  std::string gcr_id;
  /// "alg1" or a template id.
  std::string method;
  /// Chosen message pair or placeholder binding, human readable.
  std::string detail;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// A rule one partner can check on its own model.
struct Assertion {
  std::string partner;
  ComplianceRule rule;
  Provenance provenance;

  friend bool operator==(const Assertion&, const Assertion&) = default;
};

/// A message added to make a rule decomposable. The send is placed right
/// after `send_after` at the sender, the receive right before
/// `receive_before` at the receiver.
struct SyncMessage {
  std::string name;
  std::string sender;
  std::string send_after;
  std::string receiver;
  std::string receive_before;

  friend bool operator==(const SyncMessage&, const SyncMessage&) = default;
};

struct OperationCounts {
  std::uint64_t queue_pops = 0;
  std::uint64_t edges_scanned = 0;
  std::uint64_t theta_pairs = 0;
  std::uint64_t merge_comparisons = 0;

  std::uint64_t total() const {
    return queue_pops + edges_scanned + theta_pairs + merge_comparisons;
  }
};

struct Decomposition {
  std::string gcr_id;
  std::string method;
  DecompositionStatus status = DecompositionStatus::transitive;
  std::vector<Assertion> assertions;
  std::vector<SyncMessage> sync_messages;
  std::string reason;
  /// Set when sync messages changed the models.
  std::optional<Choreography> choreography;
  OperationCounts ops;

  std::vector<ComplianceRule> rules() const;
};

/// Everything decomposition needs to know about the partners. The central
/// implementation reads the models directly; the negotiation routes each
/// query to the partner that owns the model.
class RelationOracle {
 public:
  virtual ~RelationOracle() = default;
  virtual std::vector<std::string> partners() const = 0;
  /// The partner's own send and receive nodes in document order.
  virtual std::vector<MessageNode> messages(std::string_view partner) = 0;
  /// Does the partner's private model satisfy the rule (atomic labels)?
  virtual bool holds(std::string_view partner, const ComplianceRule& rule) = 0;
  /// Does the node occur at most once in every run of the partner's model?
  virtual bool loop_free(std::string_view partner, const RuleNode& node) = 0;
  virtual void insert_sync(const SyncMessage& sync) = 0;
};

class ModelOracle final : public RelationOracle {
 public:
  explicit ModelOracle(Choreography chor);
  ~ModelOracle() override;

  std::vector<std::string> partners() const override;
  std::vector<MessageNode> messages(std::string_view partner) override;
  bool holds(std::string_view partner, const ComplianceRule& rule) override;
  bool loop_free(std::string_view partner, const RuleNode& node) override;
  void insert_sync(const SyncMessage& sync) override;

  const Choreography& choreography() const { return chor_; }
  std::uint64_t queries() const { return queries_; }

 private:
  struct Cache;
  Choreography chor_;
  std::unique_ptr<Cache> cache_;
  std::uint64_t queries_ = 0;
};

/// Textual key identifying a rule's structure; equal keys mean equal rules
/// up to the rule id.
std::string rule_key(const ComplianceRule& rule);

/// Rule node for a message as seen by `partner`: activity is the message
/// name and the role is the partner's endpoint.
RuleNode message_rule_node(const MessageNode& m, std::string id);

enum class MessageDirection { after, before };

/// Messages m of `partner` with node ->> m (after) or m ->> node (before) on
/// the partner's model, in document order without duplicates.
std::vector<std::string> succeeding_messages(RelationOracle& oracle, std::string_view partner,
                                             const RuleNode& node, MessageDirection direction);
std::vector<std::string> succeeding_messages(const Choreography& chor, std::string_view partner,
                                             std::string_view activity,
                                             MessageDirection direction);

struct ThetaHop {
  std::string partner;
  std::string from;
  std::string to;

  friend bool operator==(const ThetaHop&, const ThetaHop&) = default;
};

/// A pair (m_n, m_s) connected through zero or more hops, each justified by
/// a local relation at the hop's partner.
struct ThetaPair {
  std::string m_n;
  std::string m_s;
  std::vector<ThetaHop> hops;

  friend bool operator==(const ThetaPair&, const ThetaPair&) = default;
};

struct Theta {
  std::string n_partner;
  std::string s_partner;
  std::vector<std::string> n_set;
  std::vector<std::string> s_set;
  /// Best pair first: shared message, then fewest hops, then names.
  std::vector<ThetaPair> pairs;
  /// Pairs whose hops only use the partners of n and s.
  std::vector<ThetaPair> direct() const;
};

/// Θ for a cross-partner edge between the already placed node `n` and its
/// neighbour `s`. `s_after_n` is the edge direction.
Theta compute_theta(RelationOracle& oracle, const RuleNode& n, const RuleNode& s, bool s_after_n,
                    OperationCounts* ops = nullptr);
Theta compute_theta(const Choreography& chor, const RuleNode& n, const RuleNode& s,
                    bool s_after_n);

/// Sync message name and anchors for the edge between n and s.
SyncMessage plan_sync_message(std::string_view gcr_id, const RuleNode& n, const RuleNode& s,
                              bool s_after_n);
/// Adds the send and receive to the private and public models and to γ.
/// Throws InputError when the name is taken or an anchor is missing.
Choreography insert_sync_message(const Choreography& chor, const SyncMessage& sync);
/// Places one endpoint of a sync message in the owner's private and public
/// models, leaving gamma untouched. Only the owner's models are read.
void place_sync_endpoint(Choreography& chor, const SyncMessage& sync, bool sender_side);

struct DecomposeOptions {
  bool allow_sync = true;
};

/// Breadth-first decomposition from the single antecedence occurrence.
/// Requires a tree-shaped rule whose absence nodes are leaves.
Decomposition decompose(const ComplianceRule& gcr, RelationOracle& oracle,
                        const DecomposeOptions& options = {});
Decomposition decompose(const ComplianceRule& gcr, const Choreography& chor,
                        const DecomposeOptions& options = {});

/// Applicable templates in the order they should be tried.
std::vector<std::string> select_template(const ComplianceRule& gcr, RelationOracle& oracle);
std::vector<std::string> select_template(const ComplianceRule& gcr, const Choreography& chor);

/// One premise instantiated for its owner.
struct PremiseInstance {
  std::size_t premise = 0;
  std::string partner;
  /// Placeholder -> the owner's message node chosen for it.
  std::map<std::string, MessageNode> binding;
  ComplianceRule rule;
};

struct TemplateMatch {
  std::map<std::string, std::string> placeholders;
  std::map<std::string, std::string> free_partners;
  std::vector<PremiseInstance> premises;
};

/// Partner for every owner variable of the template, or nullopt when the
/// shape does not match. Free partners come from `free_partners`.
std::optional<std::map<std::string, std::string>> template_owners(
    const TheoremTemplate& tpl, const ComplianceRule& gcr,
    const std::map<std::string, std::string>& free_partners = {});

/// All instantiations of premise `premise` over `partner`'s own messages
/// that hold on its model, ordered by message names. A placeholder shared
/// with another owner only takes messages exchanged with that owner.
std::vector<PremiseInstance> generate_candidates(
    RelationOracle& oracle, const TheoremTemplate& tpl, const ComplianceRule& gcr,
    std::size_t premise, const std::string& partner,
    const std::map<std::string, std::string>& free_partners = {});

/// Consistent selections of one instance per premise: a placeholder shared
/// by different partners must be a message exchanged between them, and
/// distinct placeholders take distinct messages. Sorted by placeholder tuple.
std::vector<TemplateMatch> match_candidates(const TheoremTemplate& tpl,
                                            const std::vector<std::vector<PremiseInstance>>& proposals);

/// Supplies the candidate instances of one premise for one owner.
using ProposalSource = std::function<std::vector<PremiseInstance>(
    std::size_t premise, const std::string& partner,
    const std::map<std::string, std::string>& free_partners)>;

/// Every consistent match over all free-partner assignments, best first.
std::vector<TemplateMatch> collect_matches(const TheoremTemplate& tpl, const ComplianceRule& gcr,
                                           const std::vector<std::string>& partners,
                                           const ProposalSource& source);

Decomposition make_template_decomposition(const TheoremTemplate& tpl, const ComplianceRule& gcr,
                                          const TemplateMatch& match);

/// Candidate decompositions, best first. Throws InputError when the rule
/// does not have the template's shape.
std::vector<Decomposition> apply_theorem_template(std::string_view id, const ComplianceRule& gcr,
                                                  RelationOracle& oracle);
std::vector<Decomposition> apply_theorem_template(std::string_view id, const ComplianceRule& gcr,
                                                  const Choreography& chor);

/// First candidate of the first selected template that has one, otherwise
/// the breadth-first algorithm. `method` is "auto", "alg1" or a template id.
Decomposition decompose_with(const ComplianceRule& gcr, RelationOracle& oracle,
                             std::string_view method = "auto",
                             const DecomposeOptions& options = {});
Decomposition decompose_with(const ComplianceRule& gcr, const Choreography& chor,
                             std::string_view method = "auto",
                             const DecomposeOptions& options = {});

}  // namespace comply
