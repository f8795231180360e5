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

#include <algorithm>
#include <functional>
#include <set>

#include "comply/decomposition.hpp"
#include "comply/errors.hpp"

namespace comply {

namespace {

std::map<std::string, std::size_t> require_shape(const TheoremTemplate& tpl,
                                                 const ComplianceRule& gcr) {
  auto binding = match_shape(tpl, gcr);
  if (!binding) {
    throw InputError("rule '" + gcr.id + "' does not have the shape of template " + tpl.id);
  }
  return *binding;
}

// Placeholders of one premise, in template order.
std::vector<std::string> premise_placeholders(const TheoremTemplate& tpl, std::size_t premise) {
  std::vector<std::string> out;
  const auto& rule = tpl.premises[premise].rule;
  for (const auto& p : tpl.placeholders) {
    if (rule.index_of(p)) out.push_back(p);
  }
  return out;
}

std::string binding_text(const std::map<std::string, std::string>& placeholders,
                         const std::map<std::string, std::string>& free_partners,
                         const TheoremTemplate& tpl) {
  std::string text;
  for (const auto& p : tpl.placeholders) {
    if (auto it = placeholders.find(p); it != placeholders.end()) {
      text += (text.empty() ? "" : ",") + p + "=" + it->second;
    }
  }
  for (const auto& [q, partner] : free_partners) text += "," + q + "=" + partner;
  return text;
}

}  // namespace

std::optional<std::map<std::string, std::string>> template_owners(
    const TheoremTemplate& tpl, const ComplianceRule& gcr,
    const std::map<std::string, std::string>& free_partners) {
  auto binding = match_shape(tpl, gcr);
  if (!binding) return std::nullopt;
  std::map<std::string, std::string> owners;
  for (const auto& [var, idx] : *binding) owners[var] = gcr.nodes[idx].partner;
  for (const auto& [var, partner] : free_partners) owners[var] = partner;
  return owners;
}

std::vector<std::string> select_template(const ComplianceRule& gcr, RelationOracle& oracle) {
  auto fits = [&](const TheoremTemplate& t) { return match_shape(t, gcr).has_value(); };
  if (gcr.nodes.size() == 2) {
    if (fits(theorem_template("T1a"))) return {"T1a", "Cor1"};
    for (const char* id : {"T1b", "T2a", "T2b", "T8"}) {
      if (fits(theorem_template(id))) return {id};
    }
    return {};
  }
  const int n = static_cast<int>(gcr.count(Pattern::ante_occ));
  const int m = static_cast<int>(gcr.count(Pattern::cons_occ));
  if (n >= 1 && m >= 1 && static_cast<std::size_t>(n + m) == gcr.nodes.size() && n + m <= 12 &&
      fits(chaining_template(n, m))) {
    if (n == 2 && m == 2) return {"T3"};
    return {"T4(" + std::to_string(n) + "," + std::to_string(m) + ")"};
  }
  if (fits(theorem_template("T5"))) {
    bool loop_free = std::all_of(gcr.nodes.begin(), gcr.nodes.end(), [&](const RuleNode& node) {
      return oracle.loop_free(node.partner, node);
    });
    if (loop_free) return {"T7", "T5", "T6"};
    return {"T5", "T6"};
  }
  return {};
}

std::vector<std::string> select_template(const ComplianceRule& gcr, const Choreography& chor) {
  ModelOracle oracle(chor);
  return select_template(gcr, oracle);
}

std::vector<PremiseInstance> generate_candidates(
    RelationOracle& oracle, const TheoremTemplate& tpl, const ComplianceRule& gcr,
    std::size_t premise, const std::string& partner,
    const std::map<std::string, std::string>& free_partners) {
  if (premise >= tpl.premises.size()) throw InputError("template premise out of range");
  const auto binding = require_shape(tpl, gcr);
  const auto owners = *template_owners(tpl, gcr, free_partners);
  const auto& skeleton = tpl.premises[premise].rule;

  // Messages named in the rule itself cannot stand for a placeholder.
  std::set<std::string> reserved;
  for (const auto& node : gcr.nodes) {
    if (node.is_message()) reserved.insert(node.activity);
  }
  std::vector<MessageNode> own;
  {
    std::set<std::string> seen;
    for (auto& msg : oracle.messages(partner)) {
      if (!reserved.count(msg.msg) && seen.insert(msg.msg).second) own.push_back(std::move(msg));
    }
    std::sort(own.begin(), own.end(),
              [](const MessageNode& a, const MessageNode& b) { return a.msg < b.msg; });
  }

  const auto vars = premise_placeholders(tpl, premise);
  std::vector<std::vector<const MessageNode*>> domains;
  for (const auto& var : vars) {
    // Other owners of premises mentioning this placeholder.
    std::set<std::string> others;
    bool unknown_owner = false;
    for (const auto& p : tpl.premises) {
      if (!p.rule.index_of(var)) continue;
      auto it = owners.find(p.owner);
      if (it == owners.end()) unknown_owner = true;
      else if (it->second != partner) others.insert(it->second);
    }
    std::vector<const MessageNode*> domain;
    for (const auto& msg : own) {
      if (others.size() > 1) break;
      if (!unknown_owner && others.size() == 1 && msg.peer != *others.begin()) continue;
      RuleNode probe = message_rule_node(msg, msg.msg);
      if (tpl.loop_free && !oracle.loop_free(partner, probe)) continue;
      domain.push_back(&msg);
    }
    domains.push_back(std::move(domain));
  }

  std::vector<PremiseInstance> out;
  std::vector<const MessageNode*> choice(vars.size());
  std::set<std::string> used;
  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (i < vars.size()) {
      for (const auto* msg : domains[i]) {
        if (used.count(msg->msg)) continue;
        choice[i] = msg;
        used.insert(msg->msg);
        search(i + 1);
        used.erase(msg->msg);
      }
      return;
    }
    PremiseInstance inst;
    inst.premise = premise;
    inst.partner = partner;
    inst.rule.id = gcr.id + "." + tpl.id + "." + std::to_string(premise + 1);
    std::map<std::string, std::string> ids;
    for (std::size_t k = 0; k < vars.size(); ++k) inst.binding.emplace(vars[k], *choice[k]);
    for (const auto& node : skeleton.nodes) {
      RuleNode concrete;
      if (auto b = binding.find(node.activity); b != binding.end()) {
        concrete = gcr.nodes[b->second];
      } else {
        const auto& msg = inst.binding.at(node.activity);
        concrete = message_rule_node(msg, msg.msg);
        if (inst.rule.index_of(concrete.id)) concrete.id += "#" + node.activity;
      }
      concrete.pattern = node.pattern;
      ids[node.id] = concrete.id;
      inst.rule.nodes.push_back(std::move(concrete));
    }
    for (const auto& e : skeleton.edges) {
      inst.rule.edges.push_back({ids.at(e.from), ids.at(e.to), e.connector});
    }
    if (oracle.holds(partner, inst.rule)) out.push_back(std::move(inst));
  };
  search(0);
  return out;
}

std::vector<TemplateMatch> match_candidates(
    const TheoremTemplate& tpl, const std::vector<std::vector<PremiseInstance>>& proposals) {
  std::vector<TemplateMatch> out;
  if (proposals.size() != tpl.premises.size()) return out;

  std::map<std::string, MessageNode> bound;
  std::map<std::string, int> uses;  // message -> number of placeholders bound to it
  std::vector<const PremiseInstance*> chosen(proposals.size());

  auto compatible = [](const MessageNode& a, const MessageNode& b) {
    if (a.msg != b.msg) return false;
    if (a.partner == b.partner) return true;
    return a.peer == b.partner && b.peer == a.partner && a.kind != b.kind;
  };

  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (i == proposals.size()) {
      TemplateMatch match;
      for (const auto& [var, node] : bound) match.placeholders[var] = node.msg;
      for (const auto* p : chosen) match.premises.push_back(*p);
      out.push_back(std::move(match));
      return;
    }
    for (const auto& inst : proposals[i]) {
      std::vector<std::string> added;
      bool ok = true;
      for (const auto& [var, node] : inst.binding) {
        auto it = bound.find(var);
        if (it != bound.end()) {
          if (!compatible(it->second, node)) {
            ok = false;
            break;
          }
          continue;
        }
        if (uses[node.msg] > 0) {
          ok = false;
          break;
        }
        bound.emplace(var, node);
        ++uses[node.msg];
        added.push_back(var);
      }
      if (ok) {
        chosen[i] = &inst;
        search(i + 1);
      }
      for (const auto& var : added) {
        --uses[bound.at(var).msg];
        bound.erase(var);
      }
    }
  };
  search(0);

  auto key = [&](const TemplateMatch& m) {
    std::vector<std::string> k;
    for (const auto& p : tpl.placeholders) {
      auto it = m.placeholders.find(p);
      k.push_back(it == m.placeholders.end() ? std::string() : it->second);
    }
    return k;
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const TemplateMatch& a, const TemplateMatch& b) { return key(a) < key(b); });
  return out;
}

Decomposition make_template_decomposition(const TheoremTemplate& tpl, const ComplianceRule& gcr,
                                          const TemplateMatch& match) {
  Decomposition d;
  d.gcr_id = gcr.id;
  d.method = tpl.id;
  d.status = DecompositionStatus::transitive;
  const std::string detail = binding_text(match.placeholders, match.free_partners, tpl);
  for (const auto& p : match.premises) {
    d.assertions.push_back({p.partner, p.rule, {gcr.id, tpl.id, detail}});
  }
  return d;
}

std::vector<TemplateMatch> collect_matches(const TheoremTemplate& tpl, const ComplianceRule& gcr,
                                           const std::vector<std::string>& partners,
                                           const ProposalSource& source) {
  // Free partners range over partners the rule does not mention.
  const auto involved = gcr.partners();
  std::vector<std::string> outsiders;
  for (const auto& p : partners) {
    if (!std::binary_search(involved.begin(), involved.end(), p)) outsiders.push_back(p);
  }
  std::vector<std::map<std::string, std::string>> assignments{{}};
  for (const auto& var : tpl.free_partners) {
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& a : assignments) {
      for (const auto& p : outsiders) {
        bool taken = std::any_of(a.begin(), a.end(), [&](const auto& kv) { return kv.second == p; });
        if (taken) continue;
        auto b = a;
        b[var] = p;
        next.push_back(std::move(b));
      }
    }
    assignments = std::move(next);
  }

  std::vector<TemplateMatch> matches;
  for (const auto& free : assignments) {
    const auto owners = *template_owners(tpl, gcr, free);
    std::vector<std::vector<PremiseInstance>> proposals;
    for (std::size_t i = 0; i < tpl.premises.size(); ++i) {
      proposals.push_back(source(i, owners.at(tpl.premises[i].owner), free));
      if (proposals.back().empty()) break;
    }
    if (proposals.size() != tpl.premises.size() || proposals.back().empty()) continue;
    for (auto& m : match_candidates(tpl, proposals)) {
      m.free_partners = free;
      matches.push_back(std::move(m));
    }
  }
  auto key = [&](const TemplateMatch& m) {
    std::vector<std::string> k;
    for (const auto& p : tpl.placeholders) k.push_back(m.placeholders.at(p));
    for (const auto& [var, partner] : m.free_partners) k.push_back(partner);
    return k;
  };
  std::stable_sort(matches.begin(), matches.end(),
                   [&](const TemplateMatch& a, const TemplateMatch& b) { return key(a) < key(b); });
  return matches;
}

std::vector<Decomposition> apply_theorem_template(std::string_view id, const ComplianceRule& gcr,
                                                  RelationOracle& oracle) {
  const TheoremTemplate tpl = theorem_template(id);
  require_shape(tpl, gcr);
  const auto partners = oracle.partners();
  for (const auto& node : gcr.nodes) {
    if (std::find(partners.begin(), partners.end(), node.partner) == partners.end()) {
      throw InputError("node '" + node.id + "' belongs to unknown partner '" + node.partner + "'");
    }
  }
  ProposalSource local = [&](std::size_t premise, const std::string& partner,
                             const std::map<std::string, std::string>& free) {
    return generate_candidates(oracle, tpl, gcr, premise, partner, free);
  };
  std::vector<Decomposition> out;
  for (const auto& m : collect_matches(tpl, gcr, partners, local)) {
    out.push_back(make_template_decomposition(tpl, gcr, m));
  }
  return out;
}

std::vector<Decomposition> apply_theorem_template(std::string_view id, const ComplianceRule& gcr,
                                                  const Choreography& chor) {
  ModelOracle oracle(chor);
  return apply_theorem_template(id, gcr, oracle);
}

Decomposition decompose_with(const ComplianceRule& gcr, RelationOracle& oracle,
                             std::string_view method, const DecomposeOptions& options) {
  if (method == "alg1") return decompose(gcr, oracle, options);

  auto failed = [&](std::string method_name, std::string reason) {
    Decomposition d;
    d.gcr_id = gcr.id;
    d.method = std::move(method_name);
    d.status = DecompositionStatus::failed;
    d.reason = std::move(reason);
    return d;
  };

  if (method != "auto") {
    auto candidates = apply_theorem_template(method, gcr, oracle);
    if (candidates.empty()) {
      return failed(std::string(method), "no instantiation of " + std::string(method) +
                                             " holds on the partners' models");
    }
    return candidates.front();
  }

  if (gcr.partners().size() > 1) {
    for (const auto& id : select_template(gcr, oracle)) {
      auto candidates = apply_theorem_template(id, gcr, oracle);
      if (!candidates.empty()) return candidates.front();
    }
  }
  require_well_formed(gcr);
  try {
    return decompose(gcr, oracle, options);
  } catch (const InputError& e) {
    return failed("auto", e.what());
  }
}

Decomposition decompose_with(const ComplianceRule& gcr, const Choreography& chor,
                             std::string_view method, const DecomposeOptions& options) {
  for (const auto& node : gcr.nodes) {
    if (!chor.has_partner(node.partner)) {
      throw InputError("node '" + node.id + "' belongs to unknown partner '" + node.partner + "'");
    }
  }
  ModelOracle oracle(chor);
  Decomposition out = decompose_with(gcr, oracle, method, options);
  if (!out.sync_messages.empty()) out.choreography = oracle.choreography();
  return out;
}

}  // namespace comply
