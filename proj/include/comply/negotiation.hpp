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

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "comply/decomposition.hpp"

namespace comply {

enum class MessageKind { leader_announce, template_assign, candidate_proposal, match_result, sync_required };

std::string to_string(MessageKind kind);
MessageKind message_kind_from_string(std::string_view text);

struct ProtocolMessage {
  std::uint64_t round = 0;
  std::string from;
  std::string to;
  MessageKind kind = MessageKind::leader_announce;
  nlohmann::json payload;

  friend bool operator==(const ProtocolMessage&, const ProtocolMessage&) = default;
};

nlohmann::json protocol_message_to_json(const ProtocolMessage& msg);
ProtocolMessage protocol_message_from_json(const nlohmann::json& doc);
/// One message per line.
std::string transcript_to_jsonl(const std::vector<ProtocolMessage>& transcript);
std::vector<ProtocolMessage> transcript_from_jsonl(std::string_view text);

/// A partner's local view: its own private and public model, its psi entry
/// and the gamma links touching it. The roster of partner ids is public.
class PartnerAgent {
 public:
  PartnerAgent(const Choreography& chor, std::string id);

  const std::string& id() const { return id_; }
  const Choreography& view() const { return view_; }
  RelationOracle& oracle() { return *oracle_; }
  /// Places this agent's endpoint of a sync message in its own models.
  void apply_sync(const SyncMessage& sync);

  std::vector<ProtocolMessage> inbox;

 private:
  std::string id_;
  Choreography view_;
  std::unique_ptr<ModelOracle> oracle_;
};

enum class Strategy { leader, leaderless };

std::string to_string(Strategy strategy);
Strategy strategy_from_string(std::string_view text);

struct NegotiationOutcome {
  Decomposition decomposition;
  std::vector<ProtocolMessage> transcript;
  std::uint64_t rounds = 0;
  /// Empty in leaderless mode.
  std::string leader;
};

/// Simulates the setup phase between partner agents on one logical clock.
/// Agents only exchange ProtocolMessages; the decomposition equals
/// decompose_with(gcr, chor, "auto"). Throws InputError when the
/// choreography is not consistent and compatible.
NegotiationOutcome run_negotiation(const Choreography& chor, const ComplianceRule& gcr,
                                   std::uint64_t seed, Strategy strategy = Strategy::leader);

/// Decomposition announced in the final MatchResult of a transcript.
Decomposition replay_transcript(const std::vector<ProtocolMessage>& transcript);

}  // namespace comply
