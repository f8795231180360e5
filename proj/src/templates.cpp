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

#include "comply/templates.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "comply/errors.hpp"

namespace comply {

namespace {

constexpr Pattern AO = Pattern::ante_occ;
constexpr Pattern AA = Pattern::ante_abs;
constexpr Pattern CO = Pattern::cons_occ;
constexpr Pattern CA = Pattern::cons_abs;
constexpr Connector ANT = Connector::antecedence;
constexpr Connector CON = Connector::consequence;

struct E {
  const char* from;
  const char* to;
  Connector connector;
};

ComplianceRule make(std::string id, std::vector<std::pair<std::string, Pattern>> nodes,
                    std::vector<E> edges) {
  ComplianceRule r;
  r.id = std::move(id);
  for (auto& [var, pattern] : nodes) r.nodes.push_back({var, var, "", pattern, MessageRole::none});
  for (const auto& e : edges) r.edges.push_back({e.from, e.to, e.connector});
  return r;
}

PremiseTemplate premise(std::string owner, ComplianceRule rule) {
  return {std::move(owner), std::move(rule)};
}

TheoremTemplate t1a() {
  TheoremTemplate t;
  t.id = "T1a";
  t.title = "rightwards transitivity";
  t.conclusion = make("T1a", {{"A", AO}, {"C", CO}}, {{"A", "C", CON}});
  t.premises = {premise("A", make("T1a.1", {{"A", AO}, {"B", CO}}, {{"A", "B", CON}})),
                premise("C", make("T1a.2", {{"B", AO}, {"C", CO}}, {{"B", "C", CON}}))};
  t.placeholders = {"B"};
  t.converse = make("T1a.converse", {{"A", AO}, {"B", CO}, {"C", CO}},
                    {{"A", "B", CON}, {"B", "C", CON}});
  return t;
}

TheoremTemplate t1b() {
  TheoremTemplate t;
  t.id = "T1b";
  t.title = "leftwards transitivity";
  t.conclusion = make("T1b", {{"A", CO}, {"C", AO}}, {{"A", "C", CON}});
  t.premises = {premise("A", make("T1b.1", {{"A", CO}, {"B", AO}}, {{"A", "B", CON}})),
                premise("C", make("T1b.2", {{"B", CO}, {"C", AO}}, {{"B", "C", CON}}))};
  t.placeholders = {"B"};
  t.converse = make("T1b.converse", {{"A", CO}, {"B", CO}, {"C", AO}},
                    {{"A", "B", CON}, {"B", "C", CON}});
  return t;
}

TheoremTemplate cor1() {
  TheoremTemplate t;
  t.id = "Cor1";
  t.title = "transitivity through an intermediary partner";
  t.conclusion = make("Cor1", {{"A", AO}, {"D", CO}}, {{"A", "D", CON}});
  t.premises = {premise("A", make("Cor1.1", {{"A", AO}, {"B", CO}}, {{"A", "B", CON}})),
                premise("Q", make("Cor1.2", {{"B", AO}, {"C", CO}}, {{"B", "C", CON}})),
                premise("D", make("Cor1.3", {{"C", AO}, {"D", CO}}, {{"C", "D", CON}}))};
  t.placeholders = {"B", "C"};
  t.free_partners = {"Q"};
  return t;
}

TheoremTemplate t2a() {
  TheoremTemplate t;
  t.id = "T2a";
  t.title = "rightwards zig zag transitivity of absence";
  t.conclusion = make("T2a", {{"A", AO}, {"C", CA}}, {{"A", "C", CON}});
  t.premises = {premise("A", make("T2a.1", {{"B", CO}, {"A", AO}}, {{"B", "A", CON}})),
                premise("C", make("T2a.2", {{"B", AO}, {"C", CA}}, {{"B", "C", CON}}))};
  t.placeholders = {"B"};
  return t;
}

TheoremTemplate t2b() {
  TheoremTemplate t;
  t.id = "T2b";
  t.title = "leftwards zig zag transitivity of absence";
  t.conclusion = make("T2b", {{"C", CA}, {"A", AO}}, {{"C", "A", CON}});
  t.premises = {premise("A", make("T2b.1", {{"A", AO}, {"B", CO}}, {{"A", "B", CON}})),
                premise("C", make("T2b.2", {{"C", CA}, {"B", AO}}, {{"C", "B", CON}}))};
  t.placeholders = {"B"};
  return t;
}

TheoremTemplate t3() {
  TheoremTemplate t;
  t.id = "T3";
  t.title = "rightwards chaining transitivity";
  t.conclusion = make("T3", {{"A", AO}, {"B", AO}, {"C", CO}, {"D", CO}},
                      {{"A", "B", ANT}, {"B", "C", CON}, {"C", "D", CON}});
  t.premises = {
      premise("A", make("T3.1", {{"M1", CO}, {"A", AO}}, {{"M1", "A", CON}})),
      premise("B", make("T3.2", {{"M1", AO}, {"B", AO}, {"M2", CO}},
                        {{"M1", "B", ANT}, {"B", "M2", CON}})),
      premise("C", make("T3.3", {{"M2", AO}, {"C", CO}, {"M3", CO}},
                        {{"M2", "C", CON}, {"C", "M3", CON}})),
      premise("D", make("T3.4", {{"M3", AO}, {"D", CO}}, {{"M3", "D", CON}}))};
  t.placeholders = {"M1", "M2", "M3"};
  return t;
}

TheoremTemplate t5() {
  TheoremTemplate t;
  t.id = "T5";
  t.title = "between pattern 1";
  t.conclusion = make("T5", {{"A", AO}, {"B", AO}, {"C", CO}},
                      {{"A", "B", ANT}, {"A", "C", CON}, {"C", "B", CON}});
  t.premises = {
      premise("A", make("T5.1", {{"A", AO}, {"M1", CO}, {"M2", CA}},
                        {{"A", "M1", CON}, {"M2", "M1", CON}})),
      premise("B", make("T5.2", {{"M2", CO}, {"M3", CO}, {"B", AO}},
                        {{"M2", "M3", CON}, {"M3", "B", CON}})),
      premise("C", make("T5.3", {{"M1", AO}, {"M3", AO}, {"C", CO}},
                        {{"M1", "M3", ANT}, {"M1", "C", CON}, {"C", "M3", CON}}))};
  t.placeholders = {"M1", "M2", "M3"};
  return t;
}

TheoremTemplate t6() {
  TheoremTemplate t;
  t.id = "T6";
  t.title = "between pattern 2";
  t.conclusion = make("T6", {{"A", AO}, {"B", AO}, {"C", CO}},
                      {{"A", "B", ANT}, {"A", "C", CON}, {"C", "B", CON}});
  t.premises = {
      premise("A", make("T6.1", {{"M1", CO}, {"A", AO}, {"M2", CO}, {"M3", CO}, {"M4", CO}},
                        {{"M1", "A", CON}, {"A", "M2", CON}, {"M2", "M3", CON}, {"M3", "M4", CON}})),
      premise("B", make("T6.2", {{"M1", AO}, {"B", AO}, {"M4", AO}, {"M3", CA}},
                        {{"M1", "B", ANT}, {"B", "M4", ANT}, {"B", "M3", CON}, {"M3", "M4", CON}})),
      premise("B", make("T6.3", {{"M3", AO}, {"B", AO}, {"M5", CO}},
                        {{"M3", "B", ANT}, {"M3", "M5", CON}, {"M5", "B", CON}})),
      premise("C", make("T6.4", {{"M2", AO}, {"M5", AO}, {"C", CO}},
                        {{"M2", "M5", ANT}, {"M2", "C", CON}, {"C", "M5", CON}}))};
  t.placeholders = {"M1", "M2", "M3", "M4", "M5"};
  return t;
}

TheoremTemplate t7() {
  TheoremTemplate t;
  t.id = "T7";
  t.title = "between pattern without loops";
  t.conclusion = make("T7", {{"A", AO}, {"B", AO}, {"C", CO}},
                      {{"A", "B", ANT}, {"A", "C", CON}, {"C", "B", CON}});
  t.premises = {
      premise("A", make("T7.1", {{"A", AO}, {"M1", CO}, {"M2", CO}},
                        {{"A", "M1", CON}, {"M1", "M2", CON}})),
      premise("B", make("T7.2", {{"M2", CO}, {"M3", CO}, {"B", AO}},
                        {{"M2", "M3", CON}, {"M3", "B", CON}})),
      premise("C", make("T7.3", {{"M1", AO}, {"M3", AO}, {"C", CO}},
                        {{"M1", "M3", ANT}, {"M1", "C", CON}, {"C", "M3", CON}}))};
  t.placeholders = {"M1", "M2", "M3"};
  t.loop_free = true;
  return t;
}

TheoremTemplate t8() {
  TheoremTemplate t;
  t.id = "T8";
  t.title = "requires transitivity";
  t.conclusion = make("T8", {{"A", AO}, {"B", CO}}, {});
  t.premises = {premise("A", make("T8.1", {{"A", AO}, {"M", CO}}, {{"A", "M", CON}})),
                premise("B", make("T8.2", {{"M", AO}, {"B", CO}}, {}))};
  t.placeholders = {"M"};
  return t;
}

std::optional<std::pair<int, int>> parse_t4(std::string_view id) {
  if (id == "T4") return std::pair{2, 2};
  if (id.size() < 7 || id.substr(0, 3) != "T4(" || id.back() != ')') return std::nullopt;
  auto body = id.substr(3, id.size() - 4);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  int n = 0, m = 0;
  auto a = body.substr(0, comma), b = body.substr(comma + 1);
  if (std::from_chars(a.data(), a.data() + a.size(), n).ec != std::errc{}) return std::nullopt;
  if (std::from_chars(b.data(), b.data() + b.size(), m).ec != std::errc{}) return std::nullopt;
  return std::pair{n, m};
}

}  // namespace

std::vector<std::string> TheoremTemplate::letters() const {
  std::set<std::string> out(placeholders.begin(), placeholders.end());
  for (const auto& n : conclusion.nodes) out.insert(n.activity);
  return {out.begin(), out.end()};
}

std::vector<std::string> template_ids() {
  return {"T1a", "T1b", "Cor1", "T2a", "T2b", "T3", "T4", "T5", "T6", "T7", "T8"};
}

TheoremTemplate chaining_template(int n, int m) {
  if (n < 1 || m < 1 || n + m > 12) throw InputError("T4 needs 1 <= n, m and n + m <= 12");
  auto a = [](int i) { return "A" + std::to_string(i); };
  auto c = [](int j) { return "C" + std::to_string(j); };
  auto msg = [](int k) { return "M" + std::to_string(k); };

  TheoremTemplate t;
  t.id = "T4(" + std::to_string(n) + "," + std::to_string(m) + ")";
  t.title = "generic rightwards chaining transitivity";
  std::vector<std::pair<std::string, Pattern>> nodes;
  for (int i = 1; i <= n; ++i) nodes.emplace_back(a(i), AO);
  for (int j = 1; j <= m; ++j) nodes.emplace_back(c(j), CO);
  t.conclusion = make(t.id, nodes, {});
  for (int i = 1; i < n; ++i) t.conclusion.edges.push_back({a(i), a(i + 1), ANT});
  t.conclusion.edges.push_back({a(n), c(1), CON});
  for (int j = 1; j < m; ++j) t.conclusion.edges.push_back({c(j), c(j + 1), CON});

  auto rule = [&](std::string id, std::vector<std::pair<std::string, Pattern>> ns,
                  std::vector<RuleEdge> es) {
    ComplianceRule r = make(std::move(id), std::move(ns), {});
    r.edges = std::move(es);
    return r;
  };
  int k = 0;
  auto pid = [&] { return t.id + "." + std::to_string(++k); };

  if (n == 1) {
    t.premises.push_back(premise(a(1), rule(pid(), {{a(1), AO}, {msg(1), CO}}, {{a(1), msg(1), CON}})));
  } else {
    t.premises.push_back(premise(a(1), rule(pid(), {{msg(1), CO}, {a(1), AO}}, {{msg(1), a(1), CON}})));
    for (int i = 2; i <= n; ++i)
      t.premises.push_back(premise(
          a(i), rule(pid(), {{msg(i - 1), AO}, {a(i), AO}, {msg(i), CO}},
                     {{msg(i - 1), a(i), ANT}, {a(i), msg(i), CON}})));
  }
  for (int j = 1; j < m; ++j)
    t.premises.push_back(premise(
        c(j), rule(pid(), {{msg(n + j - 1), AO}, {c(j), CO}, {msg(n + j), CO}},
                   {{msg(n + j - 1), c(j), CON}, {c(j), msg(n + j), CON}})));
  t.premises.push_back(premise(
      c(m), rule(pid(), {{msg(n + m - 1), AO}, {c(m), CO}}, {{msg(n + m - 1), c(m), CON}})));
  for (int i = 1; i <= n + m - 1; ++i) t.placeholders.push_back(msg(i));
  return t;
}

TheoremTemplate theorem_template(std::string_view id) {
  if (id == "T1a") return t1a();
  if (id == "T1b") return t1b();
  if (id == "Cor1") return cor1();
  if (id == "T2a") return t2a();
  if (id == "T2b") return t2b();
  if (id == "T3") return t3();
  if (id == "T5") return t5();
  if (id == "T6") return t6();
  if (id == "T7") return t7();
  if (id == "T8") return t8();
  if (auto nm = parse_t4(id)) return chaining_template(nm->first, nm->second);
  throw InputError("unknown theorem template '" + std::string(id) + "'");
}

std::optional<std::map<std::string, std::size_t>> match_shape(const TheoremTemplate& tpl,
                                                              const ComplianceRule& gcr) {
  const auto& shape = tpl.conclusion;
  const std::size_t n = shape.nodes.size();
  if (gcr.nodes.size() != n || gcr.edges.size() != shape.edges.size()) return std::nullopt;

  auto edge_key = [](const ComplianceRule& r, const RuleEdge& e) {
    return std::tuple{*r.index_of(e.from), *r.index_of(e.to), e.connector};
  };
  std::set<std::tuple<std::size_t, std::size_t, Connector>> gcr_edges;
  for (const auto& e : gcr.edges) gcr_edges.insert(edge_key(gcr, e));

  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  auto consistent = [&](std::size_t upto) {
    for (const auto& e : shape.edges) {
      auto [f, t, c] = edge_key(shape, e);
      if (f > upto || t > upto) continue;
      if (!gcr_edges.count({image[f], image[t], c})) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t g = 0; g < n; ++g) {
      if (used[g] || gcr.nodes[g].pattern != shape.nodes[i].pattern) continue;
      image[i] = g;
      used[g] = true;
      if (consistent(i) && self(self, i + 1)) return true;
      used[g] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  std::map<std::string, std::size_t> binding;
  for (std::size_t i = 0; i < n; ++i) binding[shape.nodes[i].activity] = image[i];
  return binding;
}

}  // namespace comply
