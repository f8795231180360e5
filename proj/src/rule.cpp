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

#include "comply/rule.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "comply/errors.hpp"

namespace comply {

namespace {

constexpr long kUnassigned = -1;

}  // namespace

std::string to_string(Pattern pattern) {
  switch (pattern) {
    case Pattern::ante_occ: return "ante_occ";
    case Pattern::ante_abs: return "ante_abs";
    case Pattern::cons_occ: return "cons_occ";
    case Pattern::cons_abs: return "cons_abs";
  }
  return "?";
}

std::string to_string(Connector connector) {
  return connector == Connector::antecedence ? "antecedence" : "consequence";
}

std::string to_string(MessageRole role) {
  switch (role) {
    case MessageRole::none: return "none";
    case MessageRole::send: return "send";
    case MessageRole::receive: return "receive";
    case MessageRole::either: return "either";
  }
  return "?";
}

Pattern pattern_from_string(std::string_view text) {
  if (text == "ante_occ") return Pattern::ante_occ;
  if (text == "ante_abs") return Pattern::ante_abs;
  if (text == "cons_occ") return Pattern::cons_occ;
  if (text == "cons_abs") return Pattern::cons_abs;
  throw InputError("unknown node pattern '" + std::string(text) + "'");
}

Connector connector_from_string(std::string_view text) {
  if (text == "antecedence") return Connector::antecedence;
  if (text == "consequence") return Connector::consequence;
  throw InputError("unknown connector '" + std::string(text) + "'");
}

MessageRole message_role_from_string(std::string_view text) {
  if (text == "none") return MessageRole::none;
  if (text == "send") return MessageRole::send;
  if (text == "receive") return MessageRole::receive;
  if (text == "either") return MessageRole::either;
  throw InputError("unknown message role '" + std::string(text) + "'");
}

EventLabel RuleNode::canonical_label() const {
  return is_message() ? message_label(activity) : activity_label(partner, activity);
}

bool RuleNode::matches(std::string_view label) const {
  if (!is_message()) return label == activity_label(partner, activity);
  if (!is_message_label(label)) return false;
  auto parts = parse_message_label(label);
  if (parts.name != activity) return false;
  switch (parts.endpoint) {
    case '\0': return true;
    case '!': return role == MessageRole::send || role == MessageRole::either;
    case '?': return role == MessageRole::receive || role == MessageRole::either;
    default: return false;
  }
}

std::optional<std::size_t> ComplianceRule::index_of(std::string_view node_id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == node_id) return i;
  }
  return std::nullopt;
}

const RuleNode& ComplianceRule::node(std::string_view node_id) const {
  auto idx = index_of(node_id);
  if (!idx) throw InputError("rule '" + id + "' has no node '" + std::string(node_id) + "'");
  return nodes[*idx];
}

std::size_t ComplianceRule::count(Pattern pattern) const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [&](const RuleNode& n) { return n.pattern == pattern; }));
}

std::vector<EventLabel> ComplianceRule::labels() const {
  std::vector<EventLabel> out;
  for (const auto& n : nodes) out.push_back(n.canonical_label());
  return normalize_alphabet(std::move(out));
}

std::vector<std::string> ComplianceRule::partners() const {
  std::set<std::string> out;
  for (const auto& n : nodes) out.insert(n.partner);
  return {out.begin(), out.end()};
}

ValidationReport validate_rule(const ComplianceRule& rule) {
  ValidationReport report;
  auto& f = report.findings;

  std::set<std::string> ids;
  for (const auto& n : rule.nodes) {
    if (n.id.empty()) f.push_back("node with empty id");
    if (!ids.insert(n.id).second) f.push_back("duplicate node id '" + n.id + "'");
    if (n.activity.empty()) f.push_back("node '" + n.id + "' has no activity");
  }
  if (rule.count(Pattern::ante_occ) == 0) f.push_back("no antecedence occurrence");

  bool edges_resolve = true;
  std::vector<std::size_t> degree(rule.nodes.size(), 0);
  for (const auto& e : rule.edges) {
    auto from = rule.index_of(e.from);
    auto to = rule.index_of(e.to);
    if (!from || !to) {
      f.push_back("edge " + e.from + "->" + e.to + " references an unknown node");
      edges_resolve = false;
      continue;
    }
    if (*from == *to) {
      f.push_back("self loop on '" + e.from + "'");
      edges_resolve = false;
      continue;
    }
    ++degree[*from];
    ++degree[*to];
    const auto& a = rule.nodes[*from];
    const auto& b = rule.nodes[*to];
    if (e.connector == Connector::antecedence && !(a.is_antecedence() && b.is_antecedence())) {
      f.push_back("antecedence connector " + e.from + "->" + e.to +
                  " must join antecedence nodes");
    }
    if (e.connector == Connector::consequence && a.is_antecedence() && b.is_antecedence()) {
      f.push_back("consequence connector " + e.from + "->" + e.to +
                  " must touch a consequence node");
    }
    if (a.is_absence() && b.is_absence()) {
      f.push_back("edge " + e.from + "->" + e.to + " joins two absence nodes");
    }
    auto ante_abs_to_cons = [](const RuleNode& x, const RuleNode& y) {
      return x.pattern == Pattern::ante_abs && !y.is_antecedence();
    };
    if (ante_abs_to_cons(a, b) || ante_abs_to_cons(b, a)) {
      f.push_back("antecedence absence node connected to consequence node in edge " +
                  e.from + "->" + e.to);
    }
  }

  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    if (rule.nodes[i].is_absence() && degree[i] == 0) {
      f.push_back("absence node '" + rule.nodes[i].id + "' has no edges");
    }
  }

  if (edges_resolve && ids.size() == rule.nodes.size()) {
    // Kahn's algorithm; leftover nodes lie on a cycle.
    std::vector<std::size_t> indeg(rule.nodes.size(), 0);
    for (const auto& e : rule.edges) ++indeg[*rule.index_of(e.to)];
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < indeg.size(); ++i)
      if (indeg[i] == 0) ready.push_back(i);
    std::size_t seen = 0;
    while (!ready.empty()) {
      auto v = ready.back();
      ready.pop_back();
      ++seen;
      for (const auto& e : rule.edges) {
        if (*rule.index_of(e.from) == v && --indeg[*rule.index_of(e.to)] == 0)
          ready.push_back(*rule.index_of(e.to));
      }
    }
    if (seen != rule.nodes.size()) f.push_back("cyclic edges");
  }
  return report;
}

void require_well_formed(const ComplianceRule& rule) {
  auto report = validate_rule(rule);
  if (report.ok()) return;
  std::string msg = "malformed rule '" + rule.id + "':";
  for (const auto& finding : report.findings) msg += " " + finding + ";";
  throw InputError(msg);
}

// ---------------------------------------------------------------------------
// RuleMatcher

struct RuleMatcher::Workspace {
  std::vector<std::vector<std::size_t>> positions;  // node -> matching positions
  std::vector<long> assigned;
  std::vector<std::size_t> ante_order_positions;
};

RuleMatcher::RuleMatcher(const ComplianceRule& rule, std::span<const EventLabel> alphabet)
    : num_letters_(alphabet.size()) {
  require_well_formed(rule);
  const std::size_t n = rule.nodes.size();
  preds_.resize(n);
  succs_.resize(n);
  for (const auto& e : rule.edges) {
    auto from = *rule.index_of(e.from);
    auto to = *rule.index_of(e.to);
    preds_[to].push_back(from);
    succs_[from].push_back(to);
  }

  // Topological order so predecessors are placed before successors.
  std::vector<std::size_t> indeg(n, 0), order;
  for (std::size_t v = 0; v < n; ++v) indeg[v] = preds_[v].size();
  std::vector<std::size_t> ready;
  for (std::size_t v = n; v-- > 0;)
    if (indeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (auto w : succs_[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }

  for (auto v : order) {
    const auto& node = rule.nodes[v];
    switch (node.pattern) {
      case Pattern::ante_occ: ante_occ_.push_back(v); break;
      case Pattern::ante_abs: ante_abs_.push_back(v); break;
      case Pattern::cons_occ: cons_occ_.push_back(v); break;
      case Pattern::cons_abs: cons_abs_.push_back(v); break;
    }
  }
  for (std::size_t v = 0; v < n; ++v) node_ids_.push_back(rule.nodes[v].id);

  matches_.assign(n, std::vector<bool>(num_letters_, false));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t l = 0; l < num_letters_; ++l)
      matches_[v][l] = rule.nodes[v].matches(alphabet[l]);
}

void RuleMatcher::prepare(Workspace& ws, std::span<const Letter> trace) const {
  const std::size_t n = matches_.size();
  ws.positions.resize(n);
  for (auto& p : ws.positions) p.clear();
  ws.assigned.assign(n, kUnassigned);
  for (std::size_t t = 0; t < trace.size(); ++t) {
    for (std::size_t v = 0; v < n; ++v)
      if (matches_[v][trace[t]]) ws.positions[v].push_back(t);
  }
}

bool RuleMatcher::try_place(const Workspace& ws, std::size_t node, std::size_t pos) const {
  const long p = static_cast<long>(pos);
  for (auto u : preds_[node])
    if (ws.assigned[u] != kUnassigned && !(ws.assigned[u] < p)) return false;
  for (auto w : succs_[node])
    if (ws.assigned[w] != kUnassigned && !(p < ws.assigned[w])) return false;
  return true;
}

bool RuleMatcher::has_absence_witness(const Workspace& ws, std::size_t node) const {
  for (auto pos : ws.positions[node])
    if (try_place(ws, node, pos)) return true;
  return false;
}

bool RuleMatcher::search_consequences(Workspace& ws, std::size_t depth) const {
  if (depth == cons_occ_.size()) {
    for (auto x : cons_abs_)
      if (has_absence_witness(ws, x)) return false;
    return true;
  }
  auto v = cons_occ_[depth];
  for (auto pos : ws.positions[v]) {
    if (!try_place(ws, v, pos)) continue;
    ws.assigned[v] = static_cast<long>(pos);
    bool ok = search_consequences(ws, depth + 1);
    ws.assigned[v] = kUnassigned;
    if (ok) return true;
  }
  return false;
}

// Returns false as soon as a violated activation is found when `out` is null.
bool RuleMatcher::search_activations(Workspace& ws, std::size_t depth,
                                     std::vector<Activation>* out) const {
  if (depth == ante_occ_.size()) {
    for (auto x : ante_abs_)
      if (has_absence_witness(ws, x)) return true;  // not an activation
    bool satisfied = search_consequences(ws, 0);
    if (out) {
      Activation act;
      for (auto v : ante_occ_) {
        act.node_ids.push_back(node_ids_[v]);
        act.positions.push_back(static_cast<std::size_t>(ws.assigned[v]));
      }
      act.satisfied = satisfied;
      out->push_back(std::move(act));
      return true;
    }
    return satisfied;
  }
  auto v = ante_occ_[depth];
  for (auto pos : ws.positions[v]) {
    if (!try_place(ws, v, pos)) continue;
    ws.assigned[v] = static_cast<long>(pos);
    bool ok = search_activations(ws, depth + 1, out);
    ws.assigned[v] = kUnassigned;
    if (!ok) return false;
  }
  return true;
}

bool RuleMatcher::holds(std::span<const Letter> trace) const {
  thread_local Workspace ws;
  prepare(ws, trace);
  return search_activations(ws, 0, nullptr);
}

std::vector<Activation> RuleMatcher::activations(std::span<const Letter> trace) const {
  Workspace ws;
  prepare(ws, trace);
  std::vector<Activation> out;
  search_activations(ws, 0, &out);
  return out;
}

namespace {

std::pair<std::vector<EventLabel>, std::vector<Letter>> encode(const Trace& trace) {
  auto alphabet = normalize_alphabet(trace);
  std::map<EventLabel, Letter> index;
  for (std::size_t i = 0; i < alphabet.size(); ++i) index[alphabet[i]] = static_cast<Letter>(i);
  std::vector<Letter> letters;
  letters.reserve(trace.size());
  for (const auto& label : trace) letters.push_back(index.at(label));
  return {std::move(alphabet), std::move(letters)};
}

}  // namespace

bool evaluate_rule(const Trace& trace, const ComplianceRule& rule) {
  auto [alphabet, letters] = encode(trace);
  return RuleMatcher(rule, alphabet).holds(letters);
}

std::vector<Activation> activations(const Trace& trace, const ComplianceRule& rule) {
  auto [alphabet, letters] = encode(trace);
  return RuleMatcher(rule, alphabet).activations(letters);
}

}  // namespace comply
