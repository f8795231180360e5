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

#include "comply/rule_io.hpp"

#include <fstream>

#include "comply/errors.hpp"

namespace comply {

using nlohmann::json;

namespace {

std::string required_string(const json& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_string())
    throw InputError(std::string(what) + " is missing string field '" + key + "'");
  return obj.at(key).get<std::string>();
}

}  // namespace

ComplianceRule rule_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("rule must be a JSON object");
  ComplianceRule rule;
  rule.id = required_string(doc, "id", "rule");
  if (!doc.contains("nodes") || !doc.at("nodes").is_array())
    throw InputError("rule '" + rule.id + "' has no node array");
  for (const auto& n : doc.at("nodes")) {
    RuleNode node;
    node.id = required_string(n, "id", "rule node");
    node.activity = required_string(n, "activity", "rule node");
    node.partner = n.value("partner", "");
    node.pattern = pattern_from_string(required_string(n, "pattern", "rule node"));
    if (n.contains("role")) node.role = message_role_from_string(n.at("role").get<std::string>());
    rule.nodes.push_back(std::move(node));
  }
  if (doc.contains("edges")) {
    for (const auto& e : doc.at("edges")) {
      RuleEdge edge;
      edge.from = required_string(e, "from", "rule edge");
      edge.to = required_string(e, "to", "rule edge");
      edge.connector = connector_from_string(required_string(e, "connector", "rule edge"));
      rule.edges.push_back(std::move(edge));
    }
  }
  return rule;
}

json rule_to_json(const ComplianceRule& rule) {
  json nodes = json::array();
  for (const auto& n : rule.nodes) {
    json node = {{"id", n.id},
                 {"activity", n.activity},
                 {"partner", n.partner},
                 {"pattern", to_string(n.pattern)}};
    if (n.is_message()) node["role"] = to_string(n.role);
    nodes.push_back(std::move(node));
  }
  json edges = json::array();
  for (const auto& e : rule.edges)
    edges.push_back({{"from", e.from}, {"to", e.to}, {"connector", to_string(e.connector)}});
  return {{"id", rule.id}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

ComplianceRule load_rule(const std::filesystem::path& path) {
  return rule_from_json(read_json_file(path));
}

std::vector<ComplianceRule> rules_from_json(const json& doc) {
  std::vector<ComplianceRule> out;
  if (doc.is_array()) {
    for (const auto& r : doc) out.push_back(rule_from_json(r));
  } else if (doc.is_object() && doc.contains("assertions")) {
    for (const auto& a : doc.at("assertions"))
      out.push_back(rule_from_json(a.contains("rule") ? a.at("rule") : a));
  } else {
    out.push_back(rule_from_json(doc));
  }
  return out;
}

std::vector<ComplianceRule> load_rules(const std::filesystem::path& path) {
  return rules_from_json(read_json_file(path));
}

}  // namespace comply
