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

#include "comply/reports.hpp"

#include <sstream>

#include "comply/errors.hpp"
#include "comply/rule_io.hpp"

namespace comply {

using nlohmann::json;

json trace_to_json(const Trace& trace) { return json(trace); }

json sync_to_json(const SyncMessage& s) {
  return {{"name", s.name},
          {"sender", s.sender},
          {"sendAfter", s.send_after},
          {"receiver", s.receiver},
          {"receiveBefore", s.receive_before}};
}

SyncMessage sync_from_json(const json& doc) {
  return {doc.at("name").get<std::string>(), doc.at("sender").get<std::string>(),
          doc.at("sendAfter").get<std::string>(), doc.at("receiver").get<std::string>(),
          doc.at("receiveBefore").get<std::string>()};
}

json message_node_to_json(const MessageNode& m) {
  return {{"partner", m.partner},
          {"node", m.node},
          {"msg", m.msg},
          {"kind", to_string(m.kind)},
          {"peer", m.peer}};
}

MessageNode message_node_from_json(const json& doc) {
  MessageNode m;
  m.partner = doc.at("partner").get<std::string>();
  m.node = doc.at("node").get<std::string>();
  m.msg = doc.at("msg").get<std::string>();
  m.kind = activity_kind_from_string(doc.at("kind").get<std::string>());
  m.peer = doc.at("peer").get<std::string>();
  return m;
}

json premise_instance_to_json(const PremiseInstance& inst) {
  json binding = json::object();
  for (const auto& [var, node] : inst.binding) binding[var] = message_node_to_json(node);
  return {{"premise", inst.premise},
          {"partner", inst.partner},
          {"binding", binding},
          {"rule", rule_to_json(inst.rule)}};
}

PremiseInstance premise_instance_from_json(const json& doc) {
  PremiseInstance inst;
  inst.premise = doc.at("premise").get<std::size_t>();
  inst.partner = doc.at("partner").get<std::string>();
  for (const auto& [var, node] : doc.at("binding").items()) {
    inst.binding.emplace(var, message_node_from_json(node));
  }
  inst.rule = rule_from_json(doc.at("rule"));
  return inst;
}

json assertion_to_json(const Assertion& a) {
  return {{"partner", a.partner},
          {"rule", rule_to_json(a.rule)},
          {"provenance",
           {{"gcrId", a.provenance.gcr_id},
            {"method", a.provenance.method},
            {"detail", a.provenance.detail}}}};
}

Assertion assertion_from_json(const json& doc) {
  Assertion a;
  a.partner = doc.at("partner").get<std::string>();
  a.rule = rule_from_json(doc.at("rule"));
  if (doc.contains("provenance")) {
    const auto& p = doc.at("provenance");
    a.provenance = {p.value("gcrId", ""), p.value("method", ""), p.value("detail", "")};
  }
  return a;
}

json decomposition_to_json(const Decomposition& d) {
  json assertions = json::array();
  for (const auto& a : d.assertions) assertions.push_back(assertion_to_json(a));
  json syncs = json::array();
  for (const auto& s : d.sync_messages) syncs.push_back(sync_to_json(s));
  json out = {{"gcrId", d.gcr_id},
              {"method", d.method},
              {"status", to_string(d.status)},
              {"assertions", std::move(assertions)},
              {"syncMessages", std::move(syncs)},
              {"operations",
               {{"queuePops", d.ops.queue_pops},
                {"edgesScanned", d.ops.edges_scanned},
                {"thetaPairs", d.ops.theta_pairs},
                {"mergeComparisons", d.ops.merge_comparisons}}}};
  if (!d.reason.empty()) out["reason"] = d.reason;
  return out;
}

Decomposition decomposition_from_json(const json& doc) {
  try {
    Decomposition d;
    d.gcr_id = doc.at("gcrId").get<std::string>();
    d.method = doc.value("method", "");
    const auto status = doc.at("status").get<std::string>();
    if (status == "Transitive") d.status = DecompositionStatus::transitive;
    else if (status == "RequiredSync") d.status = DecompositionStatus::required_sync;
    else if (status == "Failed") d.status = DecompositionStatus::failed;
    else throw InputError("unknown decomposition status '" + status + "'");
    for (const auto& a : doc.at("assertions")) d.assertions.push_back(assertion_from_json(a));
    if (doc.contains("syncMessages")) {
      for (const auto& s : doc.at("syncMessages")) d.sync_messages.push_back(sync_from_json(s));
    }
    d.reason = doc.value("reason", "");
    if (doc.contains("operations")) {
      const auto& ops = doc.at("operations");
      d.ops.queue_pops = ops.value("queuePops", std::uint64_t{0});
      d.ops.edges_scanned = ops.value("edgesScanned", std::uint64_t{0});
      d.ops.theta_pairs = ops.value("thetaPairs", std::uint64_t{0});
      d.ops.merge_comparisons = ops.value("mergeComparisons", std::uint64_t{0});
    }
    return d;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed decomposition report: ") + e.what());
  }
}

json verdict_to_json(const Verdict& v, bool timing) {
  json out = {{"outcome", to_string(v.outcome)},
              {"witness", trace_to_json(v.witness)},
              {"alphabet", v.alphabet},
              {"automata",
               {{"lhsStates", v.lhs_states},
                {"ruleStates", v.rule_states},
                {"productStates", v.product_states}}}};
  if (!v.reason.empty()) out["reason"] = v.reason;
  if (timing) out["wallMs"] = v.wall_ms;
  return out;
}

json theorem_result_to_json(const TheoremResult& r, bool timing) {
  json out = {{"id", r.id},
              {"result", r.holds ? "Holds" : "Counterexample"},
              {"alphabet", r.alphabet},
              {"maxLen", r.max_len},
              {"words", r.words}};
  if (r.counterexample) out["counterexample"] = trace_to_json(*r.counterexample);
  if (timing) out["wallMs"] = r.wall_ms;
  return out;
}

std::string rule_text(const ComplianceRule& rule) {
  std::ostringstream os;
  auto glyph = [](const RuleNode& n) {
    std::string name = n.activity;
    if (n.role == MessageRole::send) name += "!";
    if (n.role == MessageRole::receive) name += "?";
    switch (n.pattern) {
      case Pattern::ante_occ: return "[" + name + "]";
      case Pattern::ante_abs: return "[~" + name + "]";
      case Pattern::cons_occ: return "(" + name + ")";
      case Pattern::cons_abs: return "(~" + name + ")";
    }
    return name;
  };
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    os << (i ? ", " : "") << glyph(rule.nodes[i]);
  }
  for (const auto& e : rule.edges) {
    os << (&e == &rule.edges.front() ? " | " : ", ") << e.from
       << (e.connector == Connector::antecedence ? " -a-> " : " -> ") << e.to;
  }
  return os.str();
}

std::string decomposition_text(const Decomposition& d) {
  std::ostringstream os;
  os << d.gcr_id << ": " << to_string(d.status) << " via " << d.method << "\n";
  if (!d.reason.empty()) os << "  reason: " << d.reason << "\n";
  for (const auto& s : d.sync_messages) {
    os << "  sync " << s.name << ": " << s.sender << " sends after " << s.send_after << ", "
       << s.receiver << " receives before " << s.receive_before << "\n";
  }
  for (const auto& a : d.assertions) {
    os << "  " << a.rule.id << " @ " << a.partner << ": " << rule_text(a.rule) << "\n";
  }
  return os.str();
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream os;
  os << to_string(v.outcome);
  if (!v.reason.empty()) os << " (" << v.reason << ")";
  if (v.outcome == Outcome::violated) {
    os << "\n  witness:";
    for (const auto& l : v.witness) os << " " << l;
  }
  os << "\n";
  return os.str();
}

}  // namespace comply
