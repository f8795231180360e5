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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "comply/labels.hpp"
#include "comply/rule.hpp"

namespace comply {

using StateId = std::uint32_t;
using Symbol = std::uint32_t;
inline constexpr StateId kNoState = ~StateId{0};
inline constexpr Symbol kNoSymbol = ~Symbol{0};

/// Upper bound on states any single construction may create. Defaults to
/// 10^6, or COMPLY_STATE_BUDGET when set. Exceeding it throws ResourceError.
std::size_t state_budget();
void set_state_budget(std::size_t budget);

/// Epsilon-free nondeterministic automaton over symbols [0, num_symbols).
class Nfa {
 public:
  explicit Nfa(std::size_t num_symbols = 0) : num_symbols_(num_symbols) {}

  StateId add_state(bool accepting = false);
  void add_transition(StateId from, Symbol symbol, StateId to);
  void set_initial(StateId state) { initial_ = state; }
  void set_accepting(StateId state, bool accepting) { accepting_[state] = accepting; }

  std::size_t num_states() const { return edges_.size(); }
  std::size_t num_symbols() const { return num_symbols_; }
  std::size_t num_transitions() const;
  StateId initial() const { return initial_; }
  bool is_accepting(StateId state) const { return accepting_[state] != 0; }
  std::span<const std::pair<Symbol, StateId>> transitions(StateId state) const {
    return edges_[state];
  }
  bool is_deterministic() const;

  friend bool operator==(const Nfa&, const Nfa&) = default;

 private:
  std::size_t num_symbols_ = 0;
  StateId initial_ = 0;
  std::vector<std::uint8_t> accepting_;
  std::vector<std::vector<std::pair<Symbol, StateId>>> edges_;
};

/// Subset construction; only reachable subsets, no sink state.
Nfa determinize(const Nfa& nfa);
/// Deterministic and total (a sink state is added when needed).
Nfa complete_dfa(const Nfa& nfa);
Nfa complement(const Nfa& nfa);
/// Reachable product; result is deterministic when both inputs are.
Nfa intersect(const Nfa& a, const Nfa& b);
Nfa unite(const Nfa& a, const Nfa& b);
/// Minimal deterministic automaton without dead states, states numbered in
/// breadth-first order over ascending symbols, so equal languages give
/// equal automata.
Nfa minimize(const Nfa& nfa);
/// Relabels transitions via `symbol_map` (old symbol -> new symbol, or
/// kNoSymbol to drop). Existential projection when the map is many-to-one.
Nfa project(const Nfa& nfa, std::span<const Symbol> symbol_map, std::size_t new_num_symbols);

bool accepts(const Nfa& nfa, std::span<const Symbol> word);
/// Shortest accepted word, ties broken by ascending symbol order.
std::optional<std::vector<Symbol>> shortest_word(const Nfa& nfa);

/// Automaton over a sorted alphabet of event labels.
class FiniteAutomaton {
 public:
  FiniteAutomaton() = default;
  /// `alphabet` must be sorted and unique; its size must match the NFA.
  FiniteAutomaton(std::vector<EventLabel> alphabet, Nfa nfa);

  const std::vector<EventLabel>& alphabet() const { return alphabet_; }
  const Nfa& nfa() const { return nfa_; }
  std::size_t num_states() const { return nfa_.num_states(); }
  std::optional<Symbol> symbol_of(std::string_view label) const;
  /// Labels outside the alphabet make the trace rejected.
  bool accepts(const Trace& trace) const;

 private:
  std::vector<EventLabel> alphabet_;
  Nfa nfa_;
};

FiniteAutomaton determinize(const FiniteAutomaton& aut);
FiniteAutomaton minimize(const FiniteAutomaton& aut);
FiniteAutomaton complement(const FiniteAutomaton& aut);
/// Throws InputError when the alphabets differ.
FiniteAutomaton intersect(const FiniteAutomaton& a, const FiniteAutomaton& b);
FiniteAutomaton unite(const FiniteAutomaton& a, const FiniteAutomaton& b);
/// Universal (Sigma*) or empty automaton.
FiniteAutomaton universal_automaton(std::vector<EventLabel> alphabet);
FiniteAutomaton empty_automaton(std::vector<EventLabel> alphabet);

struct EmptinessResult {
  bool empty = true;
  Trace witness;  // shortest, lexicographically least; meaningful if !empty
};

EmptinessResult is_empty(const FiniteAutomaton& aut);

/// `initial:`/`accepting:` headers, then one `state --label--> state` line
/// per transition.
std::string to_text(const FiniteAutomaton& aut);
std::string to_dot(const FiniteAutomaton& aut, const std::string& name = "automaton");

}  // namespace comply
