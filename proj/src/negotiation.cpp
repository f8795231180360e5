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

#include "comply/negotiation.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "comply/errors.hpp"
#include "comply/reports.hpp"
#include "comply/rule_io.hpp"
#include "comply/templates.hpp"

namespace comply {

using nlohmann::json;

namespace {

constexpr std::pair<MessageKind, const char*> kKindNames[] = {
    {MessageKind::leader_announce, "LeaderAnnounce"},
    {MessageKind::template_assign, "TemplateAssign"},
    {MessageKind::candidate_proposal, "CandidateProposal"},
    {MessageKind::match_result, "MatchResult"},
    {MessageKind::sync_required, "SyncRequired"},
};

}  // namespace

std::string to_string(MessageKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "LeaderAnnounce";
}

MessageKind message_kind_from_string(std::string_view text) {
  for (const auto& [k, name] : kKindNames)
    if (text == name) return k;
  throw InputError("unknown protocol message kind '" + std::string(text) + "'");
}

std::string to_string(Strategy strategy) {
  return strategy == Strategy::leader ? "leader" : "leaderless";
}

Strategy strategy_from_string(std::string_view text) {
  if (text == "leader") return Strategy::leader;
  if (text == "leaderless") return Strategy::leaderless;
  throw InputError("unknown negotiation strategy '" + std::string(text) + "'");
}

json protocol_message_to_json(const ProtocolMessage& m) {
  return {{"round", m.round},
          {"from", m.from},
          {"to", m.to},
          {"kind", to_string(m.kind)},
          {"payload", m.payload}};
}

ProtocolMessage protocol_message_from_json(const json& doc) {
  try {
    return {doc.at("round").get<std::uint64_t>(), doc.at("from").get<std::string>(),
            doc.at("to").get<std::string>(),
            message_kind_from_string(doc.at("kind").get<std::string>()), doc.at("payload")};
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed protocol message: ") + e.what());
  }
}

std::string transcript_to_jsonl(const std::vector<ProtocolMessage>& transcript) {
  std::string out;
  for (const auto& m : transcript) out += protocol_message_to_json(m).dump() + "\n";
  return out;
}

std::vector<ProtocolMessage> transcript_from_jsonl(std::string_view text) {
  std::vector<ProtocolMessage> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(protocol_message_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw InputError(std::string("malformed transcript line: ") + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

PartnerAgent::PartnerAgent(const Choreography& chor, std::string id) : id_(std::move(id)) {
  view_.partners = chor.partners;
  view_.private_models.emplace(id_, chor.private_model(id_));
  if (auto it = chor.public_models.find(id_); it != chor.public_models.end())
    view_.public_models.emplace(id_, it->second);
  if (auto it = chor.psi.find(id_); it != chor.psi.end()) view_.psi.emplace(id_, it->second);
  if (auto it = chor.xi.find(id_); it != chor.xi.end()) view_.xi.emplace(id_, it->second);
  for (const auto& g : chor.gamma)
    if (g.sender == id_ || g.receiver == id_) view_.gamma.push_back(g);
  oracle_ = std::make_unique<ModelOracle>(view_);
}

void PartnerAgent::apply_sync(const SyncMessage& sync) {
  if (sync.sender == id_) place_sync_endpoint(view_, sync, true);
  if (sync.receiver == id_) place_sync_endpoint(view_, sync, false);
  view_.gamma.push_back({sync.sender, sync.name, sync.receiver, sync.name});
  std::sort(view_.gamma.begin(), view_.gamma.end());
  oracle_ = std::make_unique<ModelOracle>(view_);
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

json node_payload(const RuleNode& node) {
  ComplianceRule r;
  r.id = "query";
  r.nodes = {node};
  return rule_to_json(r);
}

struct Peer {
  PartnerAgent agent;
  std::optional<ComplianceRule> gcr;
  std::set<std::string> published;
};

class Network {
 public:
  explicit Network(const Choreography& chor) {
    for (const auto& p : chor.partners) peers_.emplace(p, Peer{PartnerAgent(chor, p), {}, {}});
  }

  Peer& peer(const std::string& id) { return peers_.at(id); }
  std::vector<std::string> roster() const {
    std::vector<std::string> out;
    for (const auto& [id, _] : peers_) out.push_back(id);
    return out;
  }

  void send(const std::string& from, const std::string& to, MessageKind kind, json payload) {
    ProtocolMessage msg{++clock, from, to, kind, std::move(payload)};
    auto& target = peers_.at(to);
    if (kind == MessageKind::leader_announce && !target.gcr)
      target.gcr = rule_from_json(msg.payload.at("gcr"));
    target.agent.inbox.push_back(msg);
    log.push_back(std::move(msg));
  }

  void broadcast(const std::string& from, MessageKind kind, const json& payload,
                 bool include_self = false) {
    for (const auto& [id, _] : peers_)
      if (include_self || id != from) send(from, id, kind, payload);
  }

  std::vector<ProtocolMessage> log;
  std::uint64_t clock = 0;

 private:
  std::map<std::string, Peer> peers_;
};

// Candidate generation for one premise at its owner, using only the owner's
// view.
std::vector<PremiseInstance> own_candidates(Peer& p, const json& request) {
  const auto tpl = theorem_template(request.at("template").get<std::string>());
  return generate_candidates(p.agent.oracle(), tpl, *p.gcr, request.at("premise").get<std::size_t>(),
                             p.agent.id(), request.at("free").get<std::map<std::string, std::string>>());
}

json candidates_payload(const json& request, const std::vector<PremiseInstance>& cands) {
  json out = request;
  out["query"] = "candidates";
  out["candidates"] = json::array();
  for (const auto& c : cands) out["candidates"].push_back(premise_instance_to_json(c));
  return out;
}

// The addressed agent handles the request at the back of its inbox.
void serve(Network& net, const std::string& who) {
  Peer& self = net.peer(who);
  const ProtocolMessage req = self.agent.inbox.back();
  const auto& body = req.payload;
  if (req.kind == MessageKind::sync_required) {
    self.agent.apply_sync(sync_from_json(body.at("sync")));
    return;
  }
  const auto query = body.at("query").get<std::string>();
  if (query == "holds") {
    bool ok = self.agent.oracle().holds(who, rule_from_json(body.at("rule")));
    net.send(who, req.from, MessageKind::candidate_proposal, {{"query", query}, {"holds", ok}});
  } else if (query == "loop_free") {
    bool ok = self.agent.oracle().loop_free(who, rule_from_json(body.at("node")).nodes.at(0));
    net.send(who, req.from, MessageKind::candidate_proposal, {{"query", query}, {"loopFree", ok}});
  } else {
    json reply = candidates_payload(body, own_candidates(self, body));
    if (body.value("broadcast", false)) {
      self.published.insert(body.at("key").get<std::string>());
      net.broadcast(who, MessageKind::candidate_proposal, reply);
    } else {
      net.send(who, req.from, MessageKind::candidate_proposal, reply);
    }
  }
}

// Relation queries about other partners become TemplateAssign requests
// answered by a CandidateProposal. Message interfaces are public.
class RoutedOracle final : public RelationOracle {
 public:
  RoutedOracle(Network& net, std::string self) : net_(net), self_(std::move(self)) {}

  std::vector<std::string> partners() const override { return net_.roster(); }

  std::vector<MessageNode> messages(std::string_view partner) override {
    return net_.peer(std::string(partner)).agent.oracle().messages(partner);
  }

  bool holds(std::string_view partner, const ComplianceRule& rule) override {
    if (partner == self_) return own().holds(partner, rule);
    return ask(std::string(partner), rule_key(rule), {{"query", "holds"}, {"rule", rule_to_json(rule)}},
               "holds");
  }

  bool loop_free(std::string_view partner, const RuleNode& node) override {
    if (partner == self_) return own().loop_free(partner, node);
    json node_json = node_payload(node);
    return ask(std::string(partner), "loop\n" + node_json.dump(),
               {{"query", "loop_free"}, {"node", node_json}}, "loopFree");
  }

  void insert_sync(const SyncMessage& sync) override {
    std::set<std::string> endpoints{sync.sender, sync.receiver};
    for (const auto& p : endpoints) {
      if (p == self_) {
        net_.peer(self_).agent.apply_sync(sync);
      } else {
        net_.send(self_, p, MessageKind::sync_required, {{"sync", sync_to_json(sync)}});
        serve(net_, p);
      }
    }
    answers_.clear();
  }

 private:
  RelationOracle& own() { return net_.peer(self_).agent.oracle(); }

  bool ask(const std::string& partner, const std::string& key, json request, const char* field) {
    const std::string cache_key = partner + '\n' + key;
    if (auto it = answers_.find(cache_key); it != answers_.end()) return it->second;
    net_.send(self_, partner, MessageKind::template_assign, std::move(request));
    serve(net_, partner);
    bool ok = net_.peer(self_).agent.inbox.back().payload.at(field).get<bool>();
    answers_.emplace(cache_key, ok);
    return ok;
  }

  Network& net_;
  std::string self_;
  std::map<std::string, bool> answers_;
};

// Proposals for one premise, asked from its owner. With `broadcast` the
// owner publishes them to every agent and later askers read their inbox.
std::vector<PremiseInstance> request_candidates(Network& net, const std::string& self,
                                                const std::string& tpl_id, std::size_t premise,
                                                const std::string& partner,
                                                const std::map<std::string, std::string>& free,
                                                bool broadcast) {
  json request = {{"template", tpl_id}, {"premise", premise}, {"partner", partner}, {"free", free}};
  const std::string key = request.dump();
  request["key"] = key;
  request["broadcast"] = broadcast;
  request["query"] = "candidates";
  Peer& me = net.peer(self);

  if (partner == self) {
    auto cands = own_candidates(me, request);
    if (broadcast && me.published.insert(key).second)
      net.broadcast(self, MessageKind::candidate_proposal, candidates_payload(request, cands));
    return cands;
  }

  auto find_reply = [&]() -> const ProtocolMessage* {
    for (auto it = me.agent.inbox.rbegin(); it != me.agent.inbox.rend(); ++it) {
      if (it->kind == MessageKind::candidate_proposal && it->payload.value("key", "") == key)
        return &*it;
    }
    return nullptr;
  };
  const ProtocolMessage* reply = broadcast ? find_reply() : nullptr;
  if (!reply) {
    net.send(self, partner, MessageKind::template_assign, request);
    serve(net, partner);
    reply = find_reply();
  }
  std::vector<PremiseInstance> out;
  for (const auto& c : reply->payload.at("candidates")) out.push_back(premise_instance_from_json(c));
  return out;
}

// Most frequent ballot; ties go to the lexicographically smallest.
std::string majority(const std::vector<std::string>& ballots) {
  std::map<std::string, int> counts;
  for (const auto& b : ballots) ++counts[b];
  std::string best;
  int best_count = 0;
  for (const auto& [ballot, n] : counts) {
    if (n > best_count) {
      best = ballot;
      best_count = n;
    }
  }
  return best;
}

// Every agent tallies the ballots it received plus its own.
std::string agreed_ballot(Network& net, MessageKind kind, const std::string& field,
                          const std::map<std::string, std::string>& own) {
  std::optional<std::string> agreed;
  for (const auto& id : net.roster()) {
    std::vector<std::string> ballots{own.at(id)};
    const auto& inbox = net.peer(id).agent.inbox;
    for (auto it = inbox.rbegin(); it != inbox.rend() && ballots.size() < own.size(); ++it) {
      if (it->kind == kind && it->payload.contains(field)) ballots.push_back(it->payload.at(field).dump());
    }
    auto choice = majority(ballots);
    if (agreed && *agreed != choice) throw std::logic_error("agents disagree on a vote");
    agreed = choice;
  }
  return agreed.value_or("null");
}

Decomposition fallback(Network& net, const std::string& driver, const ComplianceRule& gcr) {
  require_well_formed(gcr);
  RoutedOracle oracle(net, driver);
  try {
    return decompose(gcr, oracle);
  } catch (const InputError& e) {
    Decomposition d;
    d.gcr_id = gcr.id;
    d.method = "auto";
    d.status = DecompositionStatus::failed;
    d.reason = e.what();
    return d;
  }
}

std::optional<Decomposition> leader_templates(Network& net, const std::string& leader,
                                              const ComplianceRule& gcr) {
  RoutedOracle oracle(net, leader);
  for (const auto& id : select_template(gcr, oracle)) {
    const auto tpl = theorem_template(id);
    ProposalSource source = [&](std::size_t premise, const std::string& partner,
                                const std::map<std::string, std::string>& free) {
      return request_candidates(net, leader, id, premise, partner, free, false);
    };
    auto matches = collect_matches(tpl, gcr, net.roster(), source);
    json result = {{"template", id}, {"matched", !matches.empty()}};
    if (!matches.empty()) result["placeholders"] = matches.front().placeholders;
    net.broadcast(leader, MessageKind::match_result, result);
    if (!matches.empty()) return make_template_decomposition(tpl, gcr, matches.front());
  }
  return std::nullopt;
}

std::optional<Decomposition> leaderless_templates(Network& net, const ComplianceRule& gcr,
                                                  const json& announce) {
  const auto roster = net.roster();
  std::map<std::string, std::string> votes;
  for (const auto& id : roster) {
    RoutedOracle oracle(net, id);
    json vote = select_template(gcr, oracle);
    votes[id] = vote.dump();
    json body = announce;
    body["vote"] = vote;
    net.broadcast(id, MessageKind::leader_announce, body);
  }
  const auto order = json::parse(agreed_ballot(net, MessageKind::leader_announce, "vote", votes))
                         .get<std::vector<std::string>>();

  for (const auto& tpl_id : order) {
    const auto tpl = theorem_template(tpl_id);
    std::map<std::string, std::string> choices;
    std::map<std::string, Decomposition> by_choice;
    for (const auto& id : roster) {
      ProposalSource source = [&](std::size_t premise, const std::string& partner,
                                  const std::map<std::string, std::string>& free) {
        return request_candidates(net, id, tpl_id, premise, partner, free, true);
      };
      auto matches = collect_matches(tpl, gcr, roster, source);
      json choice = nullptr;
      if (!matches.empty()) {
        auto d = make_template_decomposition(tpl, gcr, matches.front());
        choice = decomposition_to_json(d);
        by_choice.emplace(choice.dump(), std::move(d));
      }
      choices[id] = choice.dump();
      net.broadcast(id, MessageKind::match_result, {{"template", tpl_id}, {"choice", choice}});
    }
    auto winner = agreed_ballot(net, MessageKind::match_result, "choice", choices);
    if (auto it = by_choice.find(winner); it != by_choice.end()) return it->second;
  }
  return std::nullopt;
}

}  // namespace

NegotiationOutcome run_negotiation(const Choreography& chor, const ComplianceRule& gcr,
                                   std::uint64_t seed, Strategy strategy) {
  if (auto r = check_consistency(chor); !r.ok())
    throw InputError("choreography is not consistent: " + r.findings.front());
  if (auto r = check_compatibility(chor); !r.ok())
    throw InputError("choreography is not compatible: " + r.findings.front());
  for (const auto& node : gcr.nodes) {
    if (!chor.has_partner(node.partner))
      throw InputError("node '" + node.id + "' belongs to unknown partner '" + node.partner + "'");
  }
  const auto involved = gcr.partners();
  if (involved.empty()) require_well_formed(gcr);

  Network net(chor);
  NegotiationOutcome out;
  json announce = {{"strategy", to_string(strategy)}, {"seed", seed}, {"gcr", rule_to_json(gcr)}};
  for (const auto& id : net.roster()) net.peer(id).gcr = gcr;

  std::optional<Decomposition> found;
  if (strategy == Strategy::leader) {
    out.leader = involved.front();
    announce["leader"] = out.leader;
    net.broadcast(out.leader, MessageKind::leader_announce, announce);
    if (involved.size() > 1) found = leader_templates(net, out.leader, gcr);
  } else if (involved.size() > 1) {
    found = leaderless_templates(net, gcr, announce);
  } else {
    for (const auto& id : net.roster()) net.broadcast(id, MessageKind::leader_announce, announce);
  }
  if (!found) found = fallback(net, involved.front(), gcr);

  Decomposition d = std::move(*found);
  if (!d.sync_messages.empty()) {
    Choreography updated = chor;
    for (const auto& s : d.sync_messages) updated = insert_sync_message(updated, s);
    d.choreography = std::move(updated);
  }
  net.broadcast(involved.front(), MessageKind::match_result,
                {{"final", true}, {"decomposition", decomposition_to_json(d)}}, true);
  out.decomposition = std::move(d);
  out.rounds = net.clock;
  out.transcript = std::move(net.log);
  return out;
}

Decomposition replay_transcript(const std::vector<ProtocolMessage>& transcript) {
  for (auto it = transcript.rbegin(); it != transcript.rend(); ++it) {
    if (it->kind == MessageKind::match_result && it->payload.value("final", false))
      return decomposition_from_json(it->payload.at("decomposition"));
  }
  throw InputError("transcript has no final MatchResult");
}

}  // namespace comply
