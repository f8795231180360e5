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

// Rules are compiled by marking: a trace is annotated with the positions
// chosen for occurrence nodes, regular conditions are stated over the
// annotated ("tracked") words, and quantifiers become projections. With
//   Inner = well-formed(ante+cons) minus consequence-absence witnesses,
//   Outer = well-formed(ante) minus antecedence-absence witnesses minus
//           proj(Inner),
// the violating traces are proj(Outer) and the rule language is its
// complement. Labels are first grouped into classes of identical node
// matches so the tracked alphabets stay small.

#include "comply/rule_automaton.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>

#include "comply/errors.hpp"

namespace comply {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

struct RuleShape {
  std::size_t n = 0;
  std::vector<Pattern> pattern;
  std::vector<Mask> preds;
  std::vector<Mask> succs;
  Mask ante_occ = 0;
  Mask cons_occ = 0;
  std::vector<std::size_t> ante_abs;
  std::vector<std::size_t> cons_abs;
};

RuleShape shape_of(const ComplianceRule& rule) {
  RuleShape s;
  s.n = rule.nodes.size();
  if (s.n > 64) throw ResourceError("rule has more than 64 nodes");
  s.preds.assign(s.n, 0);
  s.succs.assign(s.n, 0);
  for (const auto& e : rule.edges) {
    auto from = *rule.index_of(e.from);
    auto to = *rule.index_of(e.to);
    s.preds[to] |= bit(from);
    s.succs[from] |= bit(to);
  }
  for (std::size_t v = 0; v < s.n; ++v) {
    s.pattern.push_back(rule.nodes[v].pattern);
    switch (rule.nodes[v].pattern) {
      case Pattern::ante_occ: s.ante_occ |= bit(v); break;
      case Pattern::cons_occ: s.cons_occ |= bit(v); break;
      case Pattern::ante_abs: s.ante_abs.push_back(v); break;
      case Pattern::cons_abs: s.cons_abs.push_back(v); break;
    }
  }
  return s;
}

// A tracked alphabet: every symbol is a (class, marked nodes) pair where the
// marked nodes are drawn from `scope` and match the class.
struct TrackAlphabet {
  std::vector<std::size_t> cls;
  std::vector<Mask> marks;
  std::map<std::pair<std::size_t, Mask>, Symbol> index;

  TrackAlphabet(const std::vector<Mask>& class_nodes, Mask scope) {
    for (std::size_t c = 0; c < class_nodes.size(); ++c) {
      Mask avail = class_nodes[c] & scope;
      // Enumerate all submasks of `avail`, including the empty one.
      Mask sub = 0;
      while (true) {
        index.emplace(std::pair{c, sub}, static_cast<Symbol>(cls.size()));
        cls.push_back(c);
        marks.push_back(sub);
        if (sub == avail) break;
        sub = (sub - avail) & avail;
      }
    }
    if (cls.size() > state_budget())
      throw ResourceError("tracked alphabet exceeded the state budget");
  }

  std::size_t size() const { return cls.size(); }
};

// Words in which every node of `scope` is marked exactly once and every edge
// inside `scope` goes strictly forward in time. States are seen-masks.
Nfa well_formed(const RuleShape& shape, const TrackAlphabet& letters, Mask scope) {
  Nfa out(letters.size());
  std::unordered_map<Mask, StateId> ids;
  std::vector<Mask> seen_of;
  auto intern = [&](Mask seen) {
    auto [it, inserted] = ids.try_emplace(seen, static_cast<StateId>(seen_of.size()));
    if (inserted) {
      out.add_state(seen == scope);
      seen_of.push_back(seen);
      if (seen_of.size() > state_budget())
        throw ResourceError("rule automaton exceeded the state budget");
    }
    return it->second;
  };
  out.set_initial(intern(0));
  for (std::size_t i = 0; i < seen_of.size(); ++i) {
    Mask seen = seen_of[i];
    for (Symbol x = 0; x < letters.size(); ++x) {
      Mask m = letters.marks[x];
      if (m & seen) continue;
      bool ok = true;
      for (std::size_t v = 0; v < shape.n && ok; ++v)
        if (m & bit(v)) ok = (shape.preds[v] & scope & ~seen) == 0;
      if (!ok) continue;
      out.add_transition(static_cast<StateId>(i), x, intern(seen | m));
    }
  }
  return out;
}

// Words containing a position where absence node `y` could be placed: its
// label occurs there, every predecessor was marked strictly earlier and no
// successor has been marked up to and including that position.
Nfa absence_witness(const RuleShape& shape, const TrackAlphabet& letters,
                    const std::vector<Mask>& class_nodes, std::size_t y) {
  const Mask nbrs = shape.preds[y] | shape.succs[y];
  Nfa out(letters.size());
  std::unordered_map<Mask, StateId> ids;
  std::vector<Mask> seen_of;
  auto intern = [&](Mask seen) {
    auto [it, inserted] = ids.try_emplace(seen, static_cast<StateId>(seen_of.size()));
    if (inserted) {
      out.add_state(false);
      seen_of.push_back(seen);
    }
    return it->second;
  };
  out.set_initial(intern(0));
  std::vector<std::pair<StateId, Symbol>> to_found;
  for (std::size_t i = 0; i < seen_of.size(); ++i) {
    Mask seen = seen_of[i];
    for (Symbol x = 0; x < letters.size(); ++x) {
      Mask m = letters.marks[x];
      out.add_transition(static_cast<StateId>(i), x, intern(seen | (m & nbrs)));
      bool here = (class_nodes[letters.cls[x]] & bit(y)) != 0;
      if (here && (shape.preds[y] & ~seen) == 0 && (shape.succs[y] & (seen | m)) == 0)
        to_found.emplace_back(static_cast<StateId>(i), x);
    }
  }
  StateId found = out.add_state(true);
  for (Symbol x = 0; x < letters.size(); ++x) out.add_transition(found, x, found);
  for (auto [s, x] : to_found) out.add_transition(s, x, found);
  return out;
}

Nfa without(const Nfa& base, const Nfa& removed) {
  return minimize(intersect(base, complement(removed)));
}

}  // namespace

FiniteAutomaton rule_to_automaton(const ComplianceRule& rule, std::span<const EventLabel> alphabet) {
  require_well_formed(rule);
  std::vector<EventLabel> labels(alphabet.begin(), alphabet.end());
  labels = normalize_alphabet(labels);
  const RuleShape shape = shape_of(rule);

  // Group labels by the set of nodes they match.
  std::map<Mask, std::size_t> class_ids;
  std::vector<Mask> class_nodes;
  std::vector<std::size_t> label_class;
  for (const auto& label : labels) {
    Mask sig = 0;
    for (std::size_t v = 0; v < shape.n; ++v)
      if (rule.nodes[v].matches(label)) sig |= bit(v);
    auto [it, inserted] = class_ids.try_emplace(sig, class_nodes.size());
    if (inserted) class_nodes.push_back(sig);
    label_class.push_back(it->second);
  }

  const Mask occ = shape.ante_occ | shape.cons_occ;
  TrackAlphabet full(class_nodes, occ);
  TrackAlphabet ante(class_nodes, shape.ante_occ);

  Nfa inner = minimize(well_formed(shape, full, occ));
  for (auto y : shape.cons_abs)
    inner = without(inner, absence_witness(shape, full, class_nodes, y));

  std::vector<Symbol> drop_cons(full.size());
  for (Symbol x = 0; x < full.size(); ++x)
    drop_cons[x] = ante.index.at({full.cls[x], full.marks[x] & shape.ante_occ});
  Nfa satisfiable = project(inner, drop_cons, ante.size());

  Nfa outer = minimize(well_formed(shape, ante, shape.ante_occ));
  for (auto x : shape.ante_abs)
    outer = without(outer, absence_witness(shape, ante, class_nodes, x));
  outer = without(outer, satisfiable);

  std::vector<Symbol> drop_all(ante.size());
  for (Symbol x = 0; x < ante.size(); ++x) drop_all[x] = static_cast<Symbol>(ante.cls[x]);
  Nfa holds = minimize(complement(project(outer, drop_all, class_nodes.size())));

  Nfa out(labels.size());
  for (StateId s = 0; s < holds.num_states(); ++s) out.add_state(holds.is_accepting(s));
  out.set_initial(holds.initial());
  for (StateId s = 0; s < holds.num_states(); ++s)
    for (auto [c, t] : holds.transitions(s))
      for (Symbol l = 0; l < labels.size(); ++l)
        if (label_class[l] == c) out.add_transition(s, l, t);
  return {std::move(labels), minimize(out)};
}

}  // namespace comply
