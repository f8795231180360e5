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

#include "comply/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "comply/errors.hpp"
#include "comply/verification.hpp"

namespace comply {

std::string to_string(DecompositionStatus status) {
  switch (status) {
    case DecompositionStatus::transitive: return "Transitive";
    case DecompositionStatus::required_sync: return "RequiredSync";
    case DecompositionStatus::failed: return "Failed";
  }
  return "?";
}

std::vector<ComplianceRule> Decomposition::rules() const {
  std::vector<ComplianceRule> out;
  for (const auto& a : assertions) out.push_back(a.rule);
  return out;
}

std::string rule_key(const ComplianceRule& rule) {
  std::string key;
  for (const auto& n : rule.nodes) {
    key += n.id + '|' + n.activity + '|' + n.partner + '|' + to_string(n.pattern) + '|' +
           to_string(n.role) + ';';
  }
  key += '#';
  for (const auto& e : rule.edges) key += e.from + '>' + e.to + ':' + to_string(e.connector) + ';';
  return key;
}

RuleNode message_rule_node(const MessageNode& m, std::string id) {
  RuleNode node;
  node.id = std::move(id);
  node.activity = m.msg;
  node.partner = m.partner;
  node.pattern = Pattern::cons_occ;
  node.role = m.role();
  return node;
}

// ---------------------------------------------------------------------------
// ModelOracle

struct ModelOracle::Cache {
  std::map<std::string, FiniteAutomaton, std::less<>> automata;
  std::unordered_map<std::string, bool> verdicts;
};

ModelOracle::ModelOracle(Choreography chor) : chor_(std::move(chor)), cache_(std::make_unique<Cache>()) {}
ModelOracle::~ModelOracle() = default;

std::vector<std::string> ModelOracle::partners() const { return chor_.partners; }

std::vector<MessageNode> ModelOracle::messages(std::string_view partner) {
  return chor_.message_nodes(partner);
}

bool ModelOracle::holds(std::string_view partner, const ComplianceRule& rule) {
  ++queries_;
  std::string key = std::string(partner) + '\n' + rule_key(rule);
  if (auto it = cache_->verdicts.find(key); it != cache_->verdicts.end()) return it->second;
  auto aut = cache_->automata.find(partner);
  if (aut == cache_->automata.end()) {
    aut = cache_->automata
              .emplace(std::string(partner),
                       model_to_automaton(chor_.private_model(partner), partner,
                                          InteractionMode::atomic))
              .first;
  }
  bool ok = check_local_compliance(aut->second, rule).ok();
  cache_->verdicts.emplace(std::move(key), ok);
  return ok;
}

bool ModelOracle::loop_free(std::string_view partner, const RuleNode& node) {
  const auto& model = chor_.private_model(partner);
  if (!node.is_message()) return is_loop_free(model, node.activity);
  for (const auto* a : activities(model)) {
    if (a->is_message() && a->msg == node.activity && !is_loop_free(model, a->label)) return false;
  }
  return true;
}

void ModelOracle::insert_sync(const SyncMessage& sync) {
  chor_ = insert_sync_message(chor_, sync);
  cache_->automata.erase(sync.sender);
  cache_->automata.erase(sync.receiver);
  cache_->verdicts.clear();
}

// ---------------------------------------------------------------------------
// Binary relations between a node and messages

namespace {

enum class Rel { resp, prec, abs_after, abs_before };

// resp(x,y): x ->> y; prec(x,y): x <<- y; abs_after(x,y): no y after x;
// abs_before(x,y): no x before y.
ComplianceRule binary(Rel rel, RuleNode x, RuleNode y) {
  ComplianceRule r;
  r.id = "rel";
  x.id = "x";
  y.id = "y";
  switch (rel) {
    case Rel::resp: x.pattern = Pattern::ante_occ; y.pattern = Pattern::cons_occ; break;
    case Rel::prec: x.pattern = Pattern::cons_occ; y.pattern = Pattern::ante_occ; break;
    case Rel::abs_after: x.pattern = Pattern::ante_occ; y.pattern = Pattern::cons_abs; break;
    case Rel::abs_before: x.pattern = Pattern::cons_abs; y.pattern = Pattern::ante_occ; break;
  }
  r.nodes = {std::move(x), std::move(y)};
  r.edges = {{"x", "y", Connector::consequence}};
  return r;
}

// First node per message name, document order.
std::vector<MessageNode> unique_messages(RelationOracle& oracle, std::string_view partner) {
  std::vector<MessageNode> out;
  std::set<std::string> seen;
  for (auto& m : oracle.messages(partner)) {
    if (seen.insert(m.msg).second) out.push_back(std::move(m));
  }
  return out;
}

// Messages m of the partner with rel(node, m) (node_first) or rel(m, node).
std::vector<std::string> related(RelationOracle& oracle, std::string_view partner,
                                 const RuleNode& node, Rel rel, bool node_first,
                                 OperationCounts* ops) {
  std::vector<std::string> out;
  for (const auto& m : unique_messages(oracle, partner)) {
    if (node.is_message() && node.activity == m.msg) continue;
    if (ops) ++ops->theta_pairs;
    RuleNode mn = message_rule_node(m, "m");
    auto rule = node_first ? binary(rel, node, mn) : binary(rel, mn, node);
    if (oracle.holds(partner, rule)) out.push_back(m.msg);
  }
  return out;
}

struct Route {
  std::vector<ThetaHop> hops;
};

// Shortest routes from `source` over hops h -> h' where some partner owning
// both messages satisfies rel(h, h'). Neighbours are explored in name order,
// so ties resolve lexicographically.
std::map<std::string, Route> routes_from(
    RelationOracle& oracle, const std::string& source, Rel rel,
    const std::map<std::string, std::vector<std::pair<std::string, MessageNode>>>& owners,
    OperationCounts* ops) {
  std::map<std::string, Route> found{{source, {}}};
  std::deque<std::string> queue{source};
  while (!queue.empty()) {
    std::string h = queue.front();
    queue.pop_front();
    auto ho = owners.find(h);
    if (ho == owners.end()) continue;
    // Candidate next messages with the smallest justifying partner.
    std::map<std::string, std::string> next;
    for (const auto& [q, h_node] : ho->second) {
      for (const auto& [h2, nodes] : owners) {
        if (h2 == h || found.count(h2)) continue;
        auto it = std::find_if(nodes.begin(), nodes.end(),
                               [&](const auto& e) { return e.first == q; });
        if (it == nodes.end()) continue;
        if (ops) ++ops->theta_pairs;
        if (auto prev = next.find(h2); prev != next.end() && prev->second <= q) continue;
        if (oracle.holds(q, binary(rel, message_rule_node(h_node, "x"),
                                   message_rule_node(it->second, "y")))) {
          next[h2] = q;
        }
      }
    }
    for (const auto& [h2, q] : next) {
      Route r = found[h];
      r.hops.push_back({q, h, h2});
      found.emplace(h2, std::move(r));
      queue.push_back(h2);
    }
  }
  return found;
}

}  // namespace

std::vector<std::string> succeeding_messages(RelationOracle& oracle, std::string_view partner,
                                             const RuleNode& node, MessageDirection direction) {
  if (direction == MessageDirection::after) {
    return related(oracle, partner, node, Rel::resp, true, nullptr);
  }
  return related(oracle, partner, node, Rel::prec, false, nullptr);
}

std::vector<std::string> succeeding_messages(const Choreography& chor, std::string_view partner,
                                             std::string_view activity,
                                             MessageDirection direction) {
  const auto& model = chor.private_model(partner);
  RuleNode node;
  node.id = "n";
  node.partner = std::string(partner);
  node.activity = std::string(activity);
  if (!find_activity(model, activity)) {
    const auto nodes = chor.message_nodes(partner);
    auto it = std::find_if(nodes.begin(), nodes.end(),
                           [&](const MessageNode& m) { return m.msg == activity; });
    if (it == nodes.end()) {
      throw InputError("partner '" + std::string(partner) + "' has no activity '" +
                       std::string(activity) + "'");
    }
    node.role = it->role();
  }
  ModelOracle oracle(chor);
  return succeeding_messages(oracle, partner, node, direction);
}

std::vector<ThetaPair> Theta::direct() const {
  std::vector<ThetaPair> out;
  for (const auto& p : pairs) {
    bool local = std::all_of(p.hops.begin(), p.hops.end(), [&](const ThetaHop& h) {
      return h.partner == n_partner || h.partner == s_partner;
    });
    if (local) out.push_back(p);
  }
  return out;
}

Theta compute_theta(RelationOracle& oracle, const RuleNode& n, const RuleNode& s, bool s_after_n,
                    OperationCounts* ops) {
  Theta theta;
  theta.n_partner = n.partner;
  theta.s_partner = s.partner;
  const bool absence = s.pattern == Pattern::cons_abs;
  // Orientation of the message chain: response routes run from m_n to m_s,
  // precedence routes from m_s to m_n.
  bool response_route = false;
  if (!absence && s_after_n) {
    theta.n_set = related(oracle, n.partner, n, Rel::resp, true, ops);
    theta.s_set = related(oracle, s.partner, s, Rel::resp, false, ops);
    response_route = true;
  } else if (!absence) {
    theta.n_set = related(oracle, n.partner, n, Rel::prec, false, ops);
    theta.s_set = related(oracle, s.partner, s, Rel::prec, true, ops);
  } else if (s_after_n) {
    theta.n_set = related(oracle, n.partner, n, Rel::prec, false, ops);
    theta.s_set = related(oracle, s.partner, s, Rel::abs_after, false, ops);
  } else {
    theta.n_set = related(oracle, n.partner, n, Rel::resp, true, ops);
    theta.s_set = related(oracle, s.partner, s, Rel::abs_before, true, ops);
    response_route = true;
  }
  if (theta.n_set.empty() || theta.s_set.empty()) return theta;

  std::map<std::string, std::vector<std::pair<std::string, MessageNode>>> owners;
  for (const auto& q : oracle.partners()) {
    for (auto& m : unique_messages(oracle, q)) owners[m.msg].emplace_back(q, std::move(m));
  }

  const auto& sources = response_route ? theta.n_set : theta.s_set;
  const auto& targets = response_route ? theta.s_set : theta.n_set;
  const Rel hop_rel = response_route ? Rel::resp : Rel::prec;
  for (const auto& src : sources) {
    auto routes = routes_from(oracle, src, hop_rel, owners, ops);
    for (const auto& dst : targets) {
      if (ops) ++ops->theta_pairs;
      auto it = routes.find(dst);
      if (it == routes.end()) continue;
      ThetaPair p;
      p.m_n = response_route ? src : dst;
      p.m_s = response_route ? dst : src;
      p.hops = it->second.hops;
      theta.pairs.push_back(std::move(p));
    }
  }
  std::sort(theta.pairs.begin(), theta.pairs.end(), [](const ThetaPair& a, const ThetaPair& b) {
    return std::tuple(a.hops.size(), a.m_n, a.m_s) < std::tuple(b.hops.size(), b.m_n, b.m_s);
  });
  return theta;
}

Theta compute_theta(const Choreography& chor, const RuleNode& n, const RuleNode& s,
                    bool s_after_n) {
  ModelOracle oracle(chor);
  return compute_theta(oracle, n, s, s_after_n);
}

// ---------------------------------------------------------------------------
// Sync messages

SyncMessage plan_sync_message(std::string_view gcr_id, const RuleNode& n, const RuleNode& s,
                              bool s_after_n) {
  SyncMessage sync;
  sync.name = "sync." + std::string(gcr_id) + "." + n.id + "." + s.id;
  // The message must run from the node that has to come first to the one
  // that has to wait. For absences the waiting side is the antecedence.
  const bool absence = s.pattern == Pattern::cons_abs;
  const bool n_first = absence ? !s_after_n : s_after_n;
  const RuleNode& first = n_first ? n : s;
  const RuleNode& second = n_first ? s : n;
  sync.sender = first.partner;
  sync.send_after = first.activity;
  sync.receiver = second.partner;
  sync.receive_before = second.activity;
  return sync;
}

namespace {

// Label of the activity named `name`, or of the first message activity
// carrying message `name`.
std::optional<std::string> anchor_label(const ProcessGraph& model, std::string_view name) {
  if (find_activity(model, name)) return std::string(name);
  for (const auto* a : activities(model)) {
    if (a->is_message() && a->msg == name) return a->label;
  }
  return std::nullopt;
}

bool insert_adjacent(ProcessGraph& g, std::string_view label, const ProcessGraph& node,
                     bool after) {
  if (g.is_activity()) {
    if (g.label != label) return false;
    ProcessGraph anchor = g;
    g = after ? seq({std::move(anchor), node}) : seq({node, std::move(anchor)});
    return true;
  }
  for (std::size_t i = 0; i < g.children.size(); ++i) {
    auto& c = g.children[i];
    if (g.kind == BlockKind::seq && c.is_activity() && c.label == label) {
      g.children.insert(g.children.begin() + static_cast<std::ptrdiff_t>(i + (after ? 1 : 0)),
                        node);
      return true;
    }
    if (insert_adjacent(c, label, node, after)) return true;
  }
  return false;
}

void insert_at_end(ProcessGraph& g, const ProcessGraph& node, bool front) {
  if (g.kind != BlockKind::seq) g = seq({g});
  g.children.insert(front ? g.children.begin() : g.children.end(), node);
}

// Places `node` in the public model next to the public node closest to the
// private anchor: after the nearest public node at or before it for a send,
// before the nearest one at or after it for a receive.
void insert_public(const Choreography& chor, const std::string& partner, ProcessGraph& pub,
                   const std::string& private_anchor, const ProcessGraph& node, bool after) {
  std::map<std::string, std::string> to_public;
  const auto psi = chor.psi.find(partner);
  for (const auto* a : activities(pub)) {
    std::string priv = a->label;
    if (psi != chor.psi.end()) {
      if (auto it = psi->second.find(a->label); it != psi->second.end()) priv = it->second;
    }
    to_public.emplace(priv, a->label);
  }
  std::vector<std::string> order;
  for (const auto* a : activities(chor.private_model(partner))) order.push_back(a->label);
  auto pos = static_cast<std::ptrdiff_t>(
      std::find(order.begin(), order.end(), private_anchor) - order.begin());
  const auto size = static_cast<std::ptrdiff_t>(order.size());

  auto backward = [&]() -> std::optional<std::string> {
    for (auto i = pos; i >= 0; --i)
      if (auto it = to_public.find(order[i]); it != to_public.end()) return it->second;
    return std::nullopt;
  };
  auto forward = [&]() -> std::optional<std::string> {
    for (auto i = pos; i < size; ++i)
      if (auto it = to_public.find(order[i]); it != to_public.end()) return it->second;
    return std::nullopt;
  };
  if (after) {
    if (auto b = backward()) insert_adjacent(pub, *b, node, true);
    else if (auto f = forward()) insert_adjacent(pub, *f, node, false);
    else insert_at_end(pub, node, true);
  } else {
    if (auto f = forward()) insert_adjacent(pub, *f, node, false);
    else if (auto b = backward()) insert_adjacent(pub, *b, node, true);
    else insert_at_end(pub, node, false);
  }
}

}  // namespace

void place_sync_endpoint(Choreography& chor, const SyncMessage& sync, bool sender_side) {
  const std::string& partner = sender_side ? sync.sender : sync.receiver;
  const std::string& anchor_name = sender_side ? sync.send_after : sync.receive_before;
  auto anchor = anchor_label(chor.private_model(partner), anchor_name);
  if (!anchor) throw InputError("sync message '" + sync.name + "' has no anchor activity");
  const ProcessGraph node = sender_side ? send_task(sync.name, sync.name, sync.receiver)
                                        : receive_task(sync.name, sync.name, sync.sender);
  const Choreography before = chor;
  if (!insert_adjacent(chor.private_models.at(partner), *anchor, node, sender_side)) {
    throw InputError("cannot place '" + sync.name + "' next to '" + *anchor + "'");
  }
  if (auto pub = chor.public_models.find(partner); pub != chor.public_models.end()) {
    insert_public(before, partner, pub->second, *anchor, node, sender_side);
  }
}

Choreography insert_sync_message(const Choreography& chor, const SyncMessage& sync) {
  if (!chor.has_partner(sync.sender) || !chor.has_partner(sync.receiver)) {
    throw InputError("sync message '" + sync.name + "' names an unknown partner");
  }
  for (const auto& m : chor.message_nodes()) {
    if (m.msg == sync.name) throw InputError("message '" + sync.name + "' already exists");
  }
  if (!anchor_label(chor.private_model(sync.sender), sync.send_after) ||
      !anchor_label(chor.private_model(sync.receiver), sync.receive_before)) {
    throw InputError("sync message '" + sync.name + "' has no anchor activity");
  }
  Choreography out = chor;
  place_sync_endpoint(out, sync, true);
  place_sync_endpoint(out, sync, false);
  out.gamma.push_back({sync.sender, sync.name, sync.receiver, sync.name});
  std::sort(out.gamma.begin(), out.gamma.end());
  return out;
}

// ---------------------------------------------------------------------------
// Breadth-first decomposition

namespace {

struct Draft {
  std::string partner;
  ComplianceRule rule;
  std::string detail;
};

std::string unique_id(const ComplianceRule& rule, const std::string& base) {
  auto taken = [&](const std::string& id) { return rule.index_of(id).has_value(); };
  if (!taken(base)) return base;
  for (int k = 2;; ++k) {
    std::string id = base + "#" + std::to_string(k);
    if (!taken(id)) return id;
  }
}

MessageNode own_message(RelationOracle& oracle, const std::string& partner,
                        const std::string& msg) {
  for (auto& m : oracle.messages(partner)) {
    if (m.msg == msg) return m;
  }
  throw InputError("partner '" + partner + "' does not exchange '" + msg + "'");
}

// Adds a message node for `msg` to the draft and returns its id.
std::string add_message(RelationOracle& oracle, Draft& d, const std::string& msg, Pattern pattern) {
  RuleNode node = message_rule_node(own_message(oracle, d.partner, msg), "");
  node.id = unique_id(d.rule, msg);
  node.pattern = pattern;
  d.rule.nodes.push_back(node);
  return node.id;
}

void check_tree(const ComplianceRule& gcr) {
  const std::size_t n = gcr.nodes.size();
  if (gcr.count(Pattern::ante_occ) != 1) {
    throw InputError("rule '" + gcr.id +
                     "' needs exactly one antecedence occurrence; use template T4 for chains");
  }
  if (gcr.edges.size() + 1 != n) throw InputError("rule '" + gcr.id + "' is not tree shaped");
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> degree(n, 0);
  for (const auto& e : gcr.edges) {
    auto a = *gcr.index_of(e.from), b = *gcr.index_of(e.to);
    ++degree[a];
    ++degree[b];
    if (find(a) == find(b)) throw InputError("rule '" + gcr.id + "' is not tree shaped");
    parent[find(a)] = find(b);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (gcr.nodes[i].is_absence() && degree[i] > 1) {
      throw InputError("absence node '" + gcr.nodes[i].id + "' must be a leaf");
    }
  }
}

void check_partners(const ComplianceRule& gcr, const std::vector<std::string>& partners) {
  for (const auto& node : gcr.nodes) {
    if (std::find(partners.begin(), partners.end(), node.partner) == partners.end()) {
      throw InputError("node '" + node.id + "' belongs to unknown partner '" + node.partner + "'");
    }
  }
}

std::optional<std::size_t> single_ante(const ComplianceRule& r) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    if (r.nodes[i].pattern == Pattern::ante_abs) return std::nullopt;
    if (r.nodes[i].pattern == Pattern::ante_occ) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  return found;
}

// Folds `from` into `into`; both hang off one antecedence node with the same label.
void merge_into(Draft& into, const Draft& from) {
  const auto& a_into = into.rule.nodes[*single_ante(into.rule)];
  const auto& a_from = from.rule.nodes[*single_ante(from.rule)];
  std::map<std::string, std::string> rename{{a_from.id, a_into.id}};
  for (const auto& node : from.rule.nodes) {
    if (node.id == a_from.id) continue;
    RuleNode copy = node;
    copy.id = unique_id(into.rule, node.id);
    rename[node.id] = copy.id;
    into.rule.nodes.push_back(std::move(copy));
  }
  for (const auto& e : from.rule.edges) {
    into.rule.edges.push_back({rename.at(e.from), rename.at(e.to), e.connector});
  }
  if (!from.detail.empty()) into.detail += (into.detail.empty() ? "" : "; ") + from.detail;
}

}  // namespace

Decomposition decompose(const ComplianceRule& gcr, RelationOracle& oracle,
                        const DecomposeOptions& options) {
  require_well_formed(gcr);
  check_tree(gcr);
  check_partners(gcr, oracle.partners());

  Decomposition out;
  out.gcr_id = gcr.id;
  out.method = "alg1";
  auto& ops = out.ops;

  const std::size_t anchor = *single_ante(gcr);
  std::vector<Draft> drafts;
  std::vector<std::size_t> draft_of(gcr.nodes.size(), 0);
  std::vector<bool> visited(gcr.nodes.size(), false);

  drafts.push_back({gcr.nodes[anchor].partner, {}, ""});
  drafts[0].rule.nodes.push_back(gcr.nodes[anchor]);
  visited[anchor] = true;
  std::deque<std::size_t> queue{anchor};

  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    ++ops.queue_pops;
    const RuleNode& un = gcr.nodes[u];
    for (const auto& e : gcr.edges) {
      ++ops.edges_scanned;
      const bool out_edge = e.from == un.id;
      if (!out_edge && e.to != un.id) continue;
      const std::size_t x = *gcr.index_of(out_edge ? e.to : e.from);
      if (visited[x]) continue;
      visited[x] = true;
      const RuleNode& xn = gcr.nodes[x];

      if (xn.partner == un.partner) {
        Draft& d = drafts[draft_of[u]];
        d.rule.nodes.push_back(xn);
        d.rule.edges.push_back(e);
        draft_of[x] = draft_of[u];
        queue.push_back(x);
        continue;
      }
      // An antecedence absence only weakens the trigger; dropping it keeps
      // the assertions sound.
      if (xn.pattern == Pattern::ante_abs) continue;

      Theta theta = compute_theta(oracle, un, xn, out_edge, &ops);
      if (theta.pairs.empty()) {
        if (!options.allow_sync) {
          out.status = DecompositionStatus::failed;
          out.reason = "no message connects '" + un.id + "' and '" + xn.id + "'";
          return out;
        }
        SyncMessage sync = plan_sync_message(gcr.id, un, xn, out_edge);
        oracle.insert_sync(sync);
        out.sync_messages.push_back(sync);
        theta = compute_theta(oracle, un, xn, out_edge, &ops);
        if (theta.pairs.empty()) {
          out.status = DecompositionStatus::failed;
          out.reason = "sync message '" + sync.name + "' did not connect '" + un.id + "' and '" +
                       xn.id + "'";
          return out;
        }
      }
      const ThetaPair& pair = theta.pairs.front();
      const std::string detail = "theta=(" + pair.m_n + "," + pair.m_s + ")";
      const bool absence = xn.pattern == Pattern::cons_abs;

      Draft& dn = drafts[draft_of[u]];
      const std::string mn = add_message(oracle, dn, pair.m_n, Pattern::cons_occ);
      // The message goes after n when s follows n, except for an absence
      // after n, which needs the message before n.
      const bool mn_after = absence ? !out_edge : out_edge;
      if (mn_after) dn.rule.edges.push_back({un.id, mn, Connector::consequence});
      else dn.rule.edges.push_back({mn, un.id, Connector::consequence});
      dn.detail += (dn.detail.empty() ? "" : "; ") + detail;

      Draft ds{xn.partner, {}, detail};
      ds.rule.nodes.push_back(xn);
      const std::string ms = add_message(oracle, ds, pair.m_s, Pattern::ante_occ);
      if (out_edge) ds.rule.edges.push_back({ms, xn.id, Connector::consequence});
      else ds.rule.edges.push_back({xn.id, ms, Connector::consequence});
      draft_of[x] = drafts.size();
      drafts.push_back(std::move(ds));
      queue.push_back(x);

      const bool response_route = absence ? !out_edge : out_edge;
      for (const auto& hop : pair.hops) {
        Draft dh{hop.partner, {}, "hop " + hop.from + "->" + hop.to};
        const std::string a = add_message(oracle, dh, hop.from, Pattern::ante_occ);
        const std::string b = add_message(oracle, dh, hop.to, Pattern::cons_occ);
        if (!response_route) {
          dh.rule.nodes[0].pattern = Pattern::cons_occ;
          dh.rule.nodes[1].pattern = Pattern::ante_occ;
        }
        dh.rule.edges.push_back({a, b, Connector::consequence});
        drafts.push_back(std::move(dh));
      }
    }
  }

  // Drop exact duplicates, then merge drafts of one partner that share
  // their only antecedence occurrence.
  std::vector<Draft> merged;
  std::set<std::string> seen;
  for (auto& d : drafts) {
    if (seen.insert(d.partner + '\n' + rule_key(d.rule)).second) merged.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < merged.size(); ++i) {
    for (std::size_t j = i + 1; j < merged.size();) {
      ++ops.merge_comparisons;
      auto ai = single_ante(merged[i].rule), aj = single_ante(merged[j].rule);
      if (merged[i].partner == merged[j].partner && ai && aj &&
          merged[i].rule.nodes[*ai].canonical_label() ==
              merged[j].rule.nodes[*aj].canonical_label()) {
        merge_into(merged[i], merged[j]);
        merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(j));
      } else {
        ++j;
      }
    }
  }

  int k = 0;
  for (auto& d : merged) {
    const bool has_consequence =
        d.rule.count(Pattern::cons_occ) + d.rule.count(Pattern::cons_abs) > 0;
    if (!has_consequence) continue;
    d.rule.id = gcr.id + ".A" + std::to_string(++k);
    out.assertions.push_back({d.partner, std::move(d.rule), {gcr.id, "alg1", d.detail}});
  }
  out.status = out.sync_messages.empty() ? DecompositionStatus::transitive
                                         : DecompositionStatus::required_sync;
  return out;
}

namespace {

void check_activities(const ComplianceRule& gcr, const Choreography& chor) {
  for (const auto& node : gcr.nodes) {
    if (!chor.has_partner(node.partner)) {
      throw InputError("node '" + node.id + "' belongs to unknown partner '" + node.partner + "'");
    }
    if (!anchor_label(chor.private_model(node.partner), node.activity)) {
      throw InputError("partner '" + node.partner + "' has no activity '" + node.activity + "'");
    }
  }
}

}  // namespace

Decomposition decompose(const ComplianceRule& gcr, const Choreography& chor,
                        const DecomposeOptions& options) {
  check_activities(gcr, chor);
  ModelOracle oracle(chor);
  Decomposition out = decompose(gcr, oracle, options);
  if (!out.sync_messages.empty()) out.choreography = oracle.choreography();
  return out;
}

}  // namespace comply
