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

#include "comply/process.hpp"

#include <algorithm>
#include <map>

#include "comply/errors.hpp"

namespace comply {

std::string to_string(ActivityKind kind) {
  switch (kind) {
    case ActivityKind::private_task: return "private";
    case ActivityKind::public_task: return "public";
    case ActivityKind::send: return "send";
    case ActivityKind::receive: return "receive";
    case ActivityKind::interaction: return "interaction";
  }
  return "private";
}

ActivityKind activity_kind_from_string(std::string_view text) {
  if (text == "private") return ActivityKind::private_task;
  if (text == "public") return ActivityKind::public_task;
  if (text == "send") return ActivityKind::send;
  if (text == "receive") return ActivityKind::receive;
  if (text == "interaction") return ActivityKind::interaction;
  throw InputError("unknown activity kind '" + std::string(text) + "'");
}

ProcessGraph task(std::string label, ActivityKind kind) {
  ProcessGraph g;
  g.kind = BlockKind::activity;
  g.label = std::move(label);
  g.activity = kind;
  return g;
}

ProcessGraph send_task(std::string label, std::string msg, std::string to) {
  ProcessGraph g = task(std::move(label), ActivityKind::send);
  g.msg = std::move(msg);
  g.peer = std::move(to);
  return g;
}

ProcessGraph receive_task(std::string label, std::string msg, std::string from) {
  ProcessGraph g = task(std::move(label), ActivityKind::receive);
  g.msg = std::move(msg);
  g.peer = std::move(from);
  return g;
}

ProcessGraph interaction(std::string msg) {
  ProcessGraph g = task(msg, ActivityKind::interaction);
  g.msg = std::move(msg);
  return g;
}

namespace {

ProcessGraph block(BlockKind kind, std::vector<ProcessGraph> children) {
  ProcessGraph g;
  g.kind = kind;
  g.children = std::move(children);
  return g;
}

void collect(const ProcessGraph& g, std::vector<const ProcessGraph*>& out) {
  if (g.is_activity()) {
    out.push_back(&g);
    return;
  }
  for (const auto& c : g.children) collect(c, out);
}

bool inside_loop(const ProcessGraph& g, std::string_view label, bool in_loop, bool& found) {
  if (g.is_activity()) {
    if (g.label == label) {
      found = true;
      return in_loop;
    }
    return false;
  }
  for (const auto& c : g.children)
    if (inside_loop(c, label, in_loop || g.kind == BlockKind::loop, found)) return true;
  return false;
}

}  // namespace

ProcessGraph seq(std::vector<ProcessGraph> children) {
  return block(BlockKind::seq, std::move(children));
}
ProcessGraph xor_of(std::vector<ProcessGraph> branches) {
  return block(BlockKind::xor_block, std::move(branches));
}
ProcessGraph and_of(std::vector<ProcessGraph> branches) {
  return block(BlockKind::and_block, std::move(branches));
}
ProcessGraph loop(ProcessGraph body, int max_unroll) {
  ProcessGraph g = block(BlockKind::loop, {std::move(body)});
  g.max_unroll = max_unroll;
  return g;
}

std::vector<const ProcessGraph*> activities(const ProcessGraph& model) {
  std::vector<const ProcessGraph*> out;
  collect(model, out);
  return out;
}

const ProcessGraph* find_activity(const ProcessGraph& model, std::string_view label) {
  for (const auto* a : activities(model))
    if (a->label == label) return a;
  return nullptr;
}

bool is_loop_free(const ProcessGraph& model, std::string_view label) {
  std::size_t count = 0;
  for (const auto* a : activities(model))
    if (a->label == label) ++count;
  if (count > 1) return false;
  bool found = false;
  return !inside_loop(model, label, false, found);
}

EventLabel event_label(const ProcessGraph& a, std::string_view partner, InteractionMode mode) {
  switch (a.activity) {
    case ActivityKind::private_task:
    case ActivityKind::public_task: return activity_label(partner, a.label);
    case ActivityKind::send:
      return mode == InteractionMode::atomic ? message_label(a.msg) : send_label(a.msg, partner);
    case ActivityKind::receive:
      return mode == InteractionMode::atomic ? message_label(a.msg)
                                             : receive_label(a.msg, partner);
    case ActivityKind::interaction: return message_label(a.msg);
  }
  return {};
}

std::vector<EventLabel> model_alphabet(const ProcessGraph& model, std::string_view partner,
                                       InteractionMode mode) {
  std::vector<EventLabel> out;
  for (const auto* a : activities(model)) out.push_back(event_label(*a, partner, mode));
  return normalize_alphabet(std::move(out));
}

// ---------------------------------------------------------------------------
// Bounded trace enumeration

namespace {

using TraceSet = std::set<Trace>;

TraceSet concat(const TraceSet& a, const TraceSet& b, std::size_t max_len) {
  TraceSet out;
  for (const auto& x : a)
    for (const auto& y : b) {
      if (x.size() + y.size() > max_len) continue;
      Trace t = x;
      t.insert(t.end(), y.begin(), y.end());
      out.insert(std::move(t));
    }
  return out;
}

void interleave(const Trace& x, std::size_t i, const Trace& y, std::size_t j, Trace& cur,
                TraceSet& out) {
  if (i == x.size() && j == y.size()) {
    out.insert(cur);
    return;
  }
  if (i < x.size()) {
    cur.push_back(x[i]);
    interleave(x, i + 1, y, j, cur, out);
    cur.pop_back();
  }
  if (j < y.size()) {
    cur.push_back(y[j]);
    interleave(x, i, y, j + 1, cur, out);
    cur.pop_back();
  }
}

TraceSet shuffle(const TraceSet& a, const TraceSet& b, std::size_t max_len) {
  TraceSet out;
  Trace cur;
  for (const auto& x : a)
    for (const auto& y : b)
      if (x.size() + y.size() <= max_len) interleave(x, 0, y, 0, cur, out);
  return out;
}

TraceSet enumerate(const ProcessGraph& g, std::string_view partner, InteractionMode mode,
                   std::size_t max_len) {
  switch (g.kind) {
    case BlockKind::activity:
      if (max_len == 0) return {};
      return {Trace{event_label(g, partner, mode)}};
    case BlockKind::seq: {
      TraceSet acc{Trace{}};
      for (const auto& c : g.children) acc = concat(acc, enumerate(c, partner, mode, max_len), max_len);
      return acc;
    }
    case BlockKind::xor_block: {
      TraceSet acc;
      if (g.children.empty()) acc.insert(Trace{});
      for (const auto& c : g.children) {
        auto sub = enumerate(c, partner, mode, max_len);
        acc.insert(sub.begin(), sub.end());
      }
      return acc;
    }
    case BlockKind::and_block: {
      TraceSet acc{Trace{}};
      for (const auto& c : g.children) acc = shuffle(acc, enumerate(c, partner, mode, max_len), max_len);
      return acc;
    }
    case BlockKind::loop: {
      TraceSet body = g.children.empty() ? TraceSet{Trace{}}
                                         : enumerate(g.children.front(), partner, mode, max_len);
      TraceSet acc{Trace{}}, power{Trace{}};
      for (int k = 0; k < g.max_unroll; ++k) {
        power = concat(power, body, max_len);
        acc.insert(power.begin(), power.end());
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

std::set<Trace> enumerate_traces(const ProcessGraph& model, std::string_view partner,
                                 InteractionMode mode, std::size_t max_len) {
  return enumerate(model, partner, mode, max_len);
}

// ---------------------------------------------------------------------------
// Automaton compilation. Fragments are epsilon-free NFAs over the model's
// symbol indices, composed by copying initial out-edges.

namespace {

class Compiler {
 public:
  Compiler(const std::vector<EventLabel>& alphabet, std::string_view partner,
           InteractionMode mode)
      : alphabet_(alphabet), partner_(partner), mode_(mode) {}

  Nfa compile(const ProcessGraph& g) const {
    switch (g.kind) {
      case BlockKind::activity: {
        Nfa f(alphabet_.size());
        StateId s = f.add_state(false);
        StateId t = f.add_state(true);
        f.set_initial(s);
        f.add_transition(s, symbol(event_label(g, partner_, mode_)), t);
        return f;
      }
      case BlockKind::seq: {
        Nfa acc = epsilon();
        for (const auto& c : g.children) acc = concat(acc, compile(c));
        return acc;
      }
      case BlockKind::xor_block: {
        if (g.children.empty()) return epsilon();
        Nfa acc = compile(g.children.front());
        for (std::size_t i = 1; i < g.children.size(); ++i) acc = unite(acc, compile(g.children[i]));
        return acc;
      }
      case BlockKind::and_block: {
        Nfa acc = epsilon();
        for (const auto& c : g.children) acc = minimize(shuffle(acc, minimize(compile(c))));
        return acc;
      }
      case BlockKind::loop:
        return star(g.children.empty() ? epsilon() : compile(g.children.front()));
    }
    return epsilon();
  }

 private:
  Symbol symbol(const EventLabel& label) const {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), label);
    if (it == alphabet_.end() || *it != label)
      throw InputError("label '" + label + "' is not in the automaton alphabet");
    return static_cast<Symbol>(it - alphabet_.begin());
  }

  Nfa epsilon() const {
    Nfa f(alphabet_.size());
    f.set_initial(f.add_state(true));
    return f;
  }

  // Appends a copy of `src` to `dst`; returns the state offset.
  static StateId append(Nfa& dst, const Nfa& src) {
    StateId offset = static_cast<StateId>(dst.num_states());
    for (StateId s = 0; s < src.num_states(); ++s) dst.add_state(src.is_accepting(s));
    for (StateId s = 0; s < src.num_states(); ++s)
      for (auto [x, t] : src.transitions(s)) dst.add_transition(offset + s, x, offset + t);
    return offset;
  }

  static Nfa concat(const Nfa& a, const Nfa& b) {
    Nfa out(a.num_symbols());
    append(out, a);
    out.set_initial(a.initial());
    StateId off = append(out, b);
    bool b_nullable = b.is_accepting(b.initial());
    for (StateId s = 0; s < a.num_states(); ++s) {
      if (!a.is_accepting(s)) continue;
      for (auto [x, t] : b.transitions(b.initial())) out.add_transition(s, x, off + t);
      out.set_accepting(s, b_nullable);
    }
    check(out);
    return out;
  }

  static Nfa star(const Nfa& a) {
    Nfa out(a.num_symbols());
    StateId init = out.add_state(true);
    out.set_initial(init);
    StateId off = append(out, a);
    for (auto [x, t] : a.transitions(a.initial())) out.add_transition(init, x, off + t);
    for (StateId s = 0; s < a.num_states(); ++s) {
      if (!a.is_accepting(s)) continue;
      for (auto [x, t] : a.transitions(a.initial())) out.add_transition(off + s, x, off + t);
    }
    check(out);
    return out;
  }

  static Nfa shuffle(const Nfa& a, const Nfa& b) {
    Nfa out(a.num_symbols());
    const std::size_t nb = b.num_states();
    for (StateId x = 0; x < a.num_states(); ++x)
      for (StateId y = 0; y < nb; ++y) out.add_state(a.is_accepting(x) && b.is_accepting(y));
    check(out);
    for (StateId x = 0; x < a.num_states(); ++x)
      for (StateId y = 0; y < nb; ++y) {
        StateId s = static_cast<StateId>(x * nb + y);
        for (auto [sym, t] : a.transitions(x)) out.add_transition(s, sym, static_cast<StateId>(t * nb + y));
        for (auto [sym, t] : b.transitions(y)) out.add_transition(s, sym, static_cast<StateId>(x * nb + t));
      }
    out.set_initial(static_cast<StateId>(a.initial() * nb + b.initial()));
    return out;
  }

  static void check(const Nfa& f) {
    if (f.num_states() > state_budget())
      throw ResourceError("model automaton exceeded the state budget");
  }

  const std::vector<EventLabel>& alphabet_;
  std::string_view partner_;
  InteractionMode mode_;
};

}  // namespace

FiniteAutomaton model_to_automaton(const ProcessGraph& model, std::string_view partner,
                                   InteractionMode mode,
                                   std::optional<std::vector<EventLabel>> alphabet) {
  std::vector<EventLabel> labels =
      alphabet ? normalize_alphabet(*alphabet) : model_alphabet(model, partner, mode);
  Compiler compiler(labels, partner, mode);
  Nfa nfa = minimize(compiler.compile(model));
  return {std::move(labels), std::move(nfa)};
}

ValidationReport validate_model(const ProcessGraph& model, std::string_view partner,
                                const std::vector<std::string>& partners) {
  ValidationReport report;
  auto& f = report.findings;
  const std::string who = partner.empty() ? std::string("model") : "partner " + std::string(partner);
  std::set<std::string> seen;
  for (const auto* a : activities(model)) {
    if (a->label.empty()) f.push_back(who + ": activity without a label");
    if (!seen.insert(a->label).second) f.push_back(who + ": duplicate label '" + a->label + "'");
    if (a->is_message()) {
      if (a->msg.empty()) f.push_back(who + ": message activity '" + a->label + "' has no message");
      if (std::find(partners.begin(), partners.end(), a->peer) == partners.end())
        f.push_back(who + ": activity '" + a->label + "' references undeclared partner '" +
                    a->peer + "'");
    }
  }
  auto check_loops = [&](auto&& self, const ProcessGraph& g) -> void {
    if (g.kind == BlockKind::loop) {
      if (g.children.size() != 1 || activities(g.children.front()).empty())
        f.push_back(who + ": loop with an empty body");
      if (g.max_unroll < 1) f.push_back(who + ": loop bound must be positive");
    }
    for (const auto& c : g.children) self(self, c);
  };
  check_loops(check_loops, model);
  return report;
}

// ---------------------------------------------------------------------------
// Choreography

bool Choreography::has_partner(std::string_view partner) const {
  return std::find(partners.begin(), partners.end(), partner) != partners.end();
}

const ProcessGraph& Choreography::private_model(std::string_view partner) const {
  auto it = private_models.find(std::string(partner));
  if (it == private_models.end())
    throw InputError("unknown partner '" + std::string(partner) + "'");
  return it->second;
}

const ProcessGraph& Choreography::public_model(std::string_view partner) const {
  auto it = public_models.find(std::string(partner));
  return it == public_models.end() ? private_model(partner) : it->second;
}

const ProcessGraph& Choreography::model(std::string_view partner, ModelView view) const {
  return view == ModelView::private_models ? private_model(partner) : public_model(partner);
}

std::vector<MessageNode> Choreography::message_nodes(std::string_view partner) const {
  std::vector<MessageNode> out;
  for (const auto* a : activities(private_model(partner)))
    if (a->is_message()) out.push_back({std::string(partner), a->label, a->msg, a->activity, a->peer});
  return out;
}

std::vector<MessageNode> Choreography::message_nodes() const {
  std::vector<MessageNode> out;
  for (const auto& p : partners) {
    if (!private_models.count(p)) continue;
    auto part = message_nodes(p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::optional<std::string> Choreography::owner_of(std::string_view activity) const {
  std::optional<std::string> owner;
  for (const auto& [p, model] : private_models) {
    const auto* a = find_activity(model, activity);
    if (!a || a->is_message()) continue;
    if (owner) return std::nullopt;
    owner = p;
  }
  return owner;
}

std::vector<EventLabel> Choreography::alphabet(InteractionMode mode, ModelView view) const {
  std::vector<EventLabel> out;
  for (const auto& p : partners) {
    if (!private_models.count(p)) continue;
    auto part = model_alphabet(model(p, view), p, mode);
    out.insert(out.end(), part.begin(), part.end());
  }
  return normalize_alphabet(std::move(out));
}

std::vector<GammaLink> derive_gamma(const Choreography& chor) {
  std::vector<GammaLink> out;
  for (const auto& p : chor.partners) {
    if (!chor.private_models.count(p)) continue;
    for (const auto* s : activities(chor.public_model(p))) {
      if (!s->is_activity() || s->activity != ActivityKind::send) continue;
      for (const auto& q : chor.partners) {
        if (q == p || !chor.private_models.count(q)) continue;
        for (const auto* r : activities(chor.public_model(q)))
          if (r->activity == ActivityKind::receive && r->msg == s->msg)
            out.push_back({p, s->label, q, r->label});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ValidationReport check_consistency(const Choreography& chor) {
  ValidationReport report;
  auto& f = report.findings;
  for (const auto& [p, _] : chor.private_models)
    if (!chor.has_partner(p)) f.push_back("private model for undeclared partner '" + p + "'");
  for (const auto& [p, _] : chor.public_models)
    if (!chor.has_partner(p)) f.push_back("public model for undeclared partner '" + p + "'");
  for (const auto& p : chor.partners) {
    auto priv = chor.private_models.find(p);
    if (priv == chor.private_models.end()) {
      f.push_back("partner '" + p + "' has no private model");
      continue;
    }
    auto add = [&](const ValidationReport& r) {
      f.insert(f.end(), r.findings.begin(), r.findings.end());
    };
    add(validate_model(priv->second, p, chor.partners));
    auto pub = chor.public_models.find(p);
    if (pub == chor.public_models.end()) continue;
    add(validate_model(pub->second, p, chor.partners));
    auto psi = chor.psi.find(p);
    for (const auto* a : activities(pub->second)) {
      std::string image = a->label;
      if (psi != chor.psi.end()) {
        auto it = psi->second.find(a->label);
        if (it != psi->second.end()) image = it->second;
      }
      if (!find_activity(priv->second, image))
        f.push_back("partner '" + p + "': public node '" + a->label +
                    "' has no matching private node");
    }
  }
  return report;
}

ValidationReport check_compatibility(const Choreography& chor) {
  ValidationReport report;
  auto resolves = [&](const std::string& partner, const std::string& node, ActivityKind kind) {
    if (!chor.private_models.count(partner)) return false;
    const auto* a = find_activity(chor.public_model(partner), node);
    return a && a->activity == kind;
  };
  for (const auto& p : chor.partners) {
    if (!chor.private_models.count(p)) continue;
    for (const auto* a : activities(chor.public_model(p))) {
      if (!a->is_message()) continue;
      bool is_send = a->activity == ActivityKind::send;
      bool matched = std::any_of(chor.gamma.begin(), chor.gamma.end(), [&](const GammaLink& g) {
        if (g.sender == g.receiver) return false;
        if (is_send)
          return g.sender == p && g.send_node == a->label &&
                 resolves(g.receiver, g.receive_node, ActivityKind::receive);
        return g.receiver == p && g.receive_node == a->label &&
               resolves(g.sender, g.send_node, ActivityKind::send);
      });
      if (!matched)
        report.findings.push_back(std::string(is_send ? "unmatched send" : "unmatched receive") +
                                  " '" + a->label + "' at partner '" + p + "'");
    }
  }
  return report;
}

}  // namespace comply
