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

#include "comply/choreography_io.hpp"

#include "comply/errors.hpp"
#include "comply/rule_io.hpp"

namespace comply {

using nlohmann::json;

namespace {

std::vector<ProcessGraph> children_from(const json& list, const char* what) {
  if (!list.is_array()) throw InputError(std::string("'") + what + "' block expects an array");
  std::vector<ProcessGraph> out;
  for (const auto& c : list) out.push_back(process_from_json(c));
  return out;
}

json children_to(const ProcessGraph& g) {
  json list = json::array();
  for (const auto& c : g.children) list.push_back(process_to_json(c));
  return list;
}

}  // namespace

ProcessGraph process_from_json(const json& doc) {
  if (doc.is_string()) return task(doc.get<std::string>());
  if (!doc.is_object() || doc.size() != 1)
    throw InputError("process block must be an object with exactly one key: " + doc.dump());
  const auto& [key, body] = *doc.items().begin();
  if (key == "seq") return seq(children_from(body, "seq"));
  if (key == "xor") return xor_of(children_from(body, "xor"));
  if (key == "and") return and_of(children_from(body, "and"));
  if (key == "loop") {
    if (!body.is_object() || !body.contains("body")) throw InputError("loop block needs a body");
    return loop(process_from_json(body.at("body")), body.value("maxUnroll", 2));
  }
  if (key == "act") {
    if (!body.is_object() || !body.contains("label")) throw InputError("activity needs a label");
    ProcessGraph g = task(body.at("label").get<std::string>(),
                          activity_kind_from_string(body.value("kind", "private")));
    g.msg = body.value("msg", "");
    g.peer = body.value("peer", "");
    if (g.msg.empty() && g.activity != ActivityKind::private_task &&
        g.activity != ActivityKind::public_task)
      g.msg = g.label;
    return g;
  }
  throw InputError("unknown process block '" + key + "'");
}

json process_to_json(const ProcessGraph& g) {
  switch (g.kind) {
    case BlockKind::seq: return {{"seq", children_to(g)}};
    case BlockKind::xor_block: return {{"xor", children_to(g)}};
    case BlockKind::and_block: return {{"and", children_to(g)}};
    case BlockKind::loop:
      return {{"loop", {{"body", process_to_json(g.children.at(0))}, {"maxUnroll", g.max_unroll}}}};
    case BlockKind::activity: {
      json act = {{"label", g.label}, {"kind", to_string(g.activity)}};
      if (!g.msg.empty()) act["msg"] = g.msg;
      if (!g.peer.empty()) act["peer"] = g.peer;
      return {{"act", act}};
    }
  }
  return nullptr;
}

Choreography choreography_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("choreography must be a JSON object");
  try {
    Choreography chor;
    chor.partners = doc.at("partners").get<std::vector<std::string>>();
    if (doc.contains("choreography")) chor.choreography = process_from_json(doc.at("choreography"));
    for (const auto& [p, block] : doc.at("private").items())
      chor.private_models[p] = process_from_json(block);
    if (doc.contains("public"))
      for (const auto& [p, block] : doc.at("public").items())
        chor.public_models[p] = process_from_json(block);
    if (doc.contains("psi"))
      chor.psi = doc.at("psi").get<std::map<std::string, std::map<std::string, std::string>>>();
    if (doc.contains("xi")) chor.xi = doc.at("xi").get<std::map<std::string, std::vector<std::string>>>();
    if (doc.contains("gamma")) {
      for (const auto& link : doc.at("gamma")) {
        if (!link.is_array() || link.size() != 4)
          throw InputError("gamma entries are [sender, node, receiver, node]");
        chor.gamma.push_back({link[0].get<std::string>(), link[1].get<std::string>(),
                              link[2].get<std::string>(), link[3].get<std::string>()});
      }
    } else {
      chor.gamma = derive_gamma(chor);
    }
    return chor;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed choreography: ") + e.what());
  }
}

json choreography_to_json(const Choreography& chor) {
  json doc;
  doc["partners"] = chor.partners;
  doc["choreography"] = process_to_json(chor.choreography);
  doc["private"] = json::object();
  for (const auto& [p, g] : chor.private_models) doc["private"][p] = process_to_json(g);
  doc["public"] = json::object();
  for (const auto& [p, g] : chor.public_models) doc["public"][p] = process_to_json(g);
  doc["psi"] = chor.psi;
  doc["gamma"] = json::array();
  for (const auto& g : chor.gamma)
    doc["gamma"].push_back({g.sender, g.send_node, g.receiver, g.receive_node});
  doc["xi"] = chor.xi;
  return doc;
}

Choreography load_choreography(const std::filesystem::path& path) {
  return choreography_from_json(read_json_file(path));
}

}  // namespace comply
