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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "comply/choreography_io.hpp"
#include "comply/rule.hpp"
#include "comply/rule_io.hpp"

namespace comply::test {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(COMPLY_FIXTURES) / name;
}

inline Choreography load_fixture(const std::string& name) { return load_choreography(fixture(name)); }
inline ComplianceRule load_fixture_rule(const std::string& name) {
  return load_rule(fixture("rules/" + name + ".json"));
}

struct N {
  std::string id;
  Pattern pattern;
  std::string partner = "";
  MessageRole role = MessageRole::none;
};

struct E {
  std::string from;
  std::string to;
  Connector connector = Connector::consequence;
};

/// Rule whose node ids double as activity names.
inline ComplianceRule make_rule(std::string id, std::vector<N> nodes, std::vector<E> edges) {
  ComplianceRule r;
  r.id = std::move(id);
  for (auto& n : nodes) r.nodes.push_back({n.id, n.id, n.partner, n.pattern, n.role});
  for (auto& e : edges) r.edges.push_back({e.from, e.to, e.connector});
  return r;
}

inline constexpr Pattern AO = Pattern::ante_occ;
inline constexpr Pattern AA = Pattern::ante_abs;
inline constexpr Pattern CO = Pattern::cons_occ;
inline constexpr Pattern CA = Pattern::cons_abs;
inline constexpr Connector ANTE = Connector::antecedence;

}  // namespace comply::test
