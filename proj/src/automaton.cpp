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

#include "comply/automaton.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "comply/errors.hpp"

namespace comply {

namespace {

std::size_t initial_budget() {
  if (const char* env = std::getenv("COMPLY_STATE_BUDGET")) {
    char* end = nullptr;
    auto value = std::strtoull(env, &end, 10);
    if (end != env && value > 0) return static_cast<std::size_t>(value);
  }
  return 1'000'000;
}

std::atomic<std::size_t>& budget_ref() {
  static std::atomic<std::size_t> budget{initial_budget()};
  return budget;
}

void check_budget(std::size_t states, const char* what) {
  if (states > state_budget())
    throw ResourceError(std::string(what) + " exceeded the state budget of " +
                        std::to_string(state_budget()) + " states");
}

struct VectorHash {
  std::size_t operator()(const std::vector<StateId>& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct PairHash {
  std::size_t operator()(const std::pair<StateId, StateId>& p) const noexcept {
    return (static_cast<std::size_t>(p.first) << 32) ^ p.second;
  }
};

// Successor subsets of `subset`, bucketed by symbol.
void successors(const Nfa& nfa, const std::vector<StateId>& subset,
                std::vector<std::vector<StateId>>& buckets) {
  for (auto& b : buckets) b.clear();
  for (auto s : subset)
    for (auto [sym, t] : nfa.transitions(s)) buckets[sym].push_back(t);
  for (auto& b : buckets) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
}

}  // namespace

std::size_t state_budget() { return budget_ref().load(); }
void set_state_budget(std::size_t budget) { budget_ref().store(budget); }

// ---------------------------------------------------------------------------
// Nfa

StateId Nfa::add_state(bool accepting) {
  accepting_.push_back(accepting ? 1 : 0);
  edges_.emplace_back();
  return static_cast<StateId>(edges_.size() - 1);
}

void Nfa::add_transition(StateId from, Symbol symbol, StateId to) {
  auto& list = edges_[from];
  std::pair<Symbol, StateId> edge{symbol, to};
  auto it = std::lower_bound(list.begin(), list.end(), edge);
  if (it == list.end() || *it != edge) list.insert(it, edge);
}

std::size_t Nfa::num_transitions() const {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.size();
  return n;
}

bool Nfa::is_deterministic() const {
  for (const auto& list : edges_)
    for (std::size_t i = 1; i < list.size(); ++i)
      if (list[i].first == list[i - 1].first) return false;
  return true;
}

Nfa determinize(const Nfa& nfa) {
  Nfa out(nfa.num_symbols());
  if (nfa.num_states() == 0) {
    out.add_state(false);
    return out;
  }
  std::unordered_map<std::vector<StateId>, StateId, VectorHash> ids;
  std::vector<std::vector<StateId>> subsets;
  auto intern = [&](std::vector<StateId> subset) {
    auto [it, inserted] = ids.try_emplace(subset, static_cast<StateId>(subsets.size()));
    if (inserted) {
      bool acc = std::any_of(subset.begin(), subset.end(),
                             [&](StateId s) { return nfa.is_accepting(s); });
      out.add_state(acc);
      subsets.push_back(std::move(subset));
      check_budget(subsets.size(), "determinization");
    }
    return it->second;
  };
  out.set_initial(intern({nfa.initial()}));
  std::vector<std::vector<StateId>> buckets(nfa.num_symbols());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    successors(nfa, subsets[i], buckets);
    for (Symbol sym = 0; sym < buckets.size(); ++sym) {
      if (buckets[sym].empty()) continue;
      auto target = intern(buckets[sym]);
      out.add_transition(static_cast<StateId>(i), sym, target);
    }
  }
  return out;
}

Nfa complete_dfa(const Nfa& nfa) {
  Nfa dfa = nfa.is_deterministic() ? nfa : determinize(nfa);
  if (dfa.num_states() == 0) dfa.set_initial(dfa.add_state(false));
  StateId sink = kNoState;
  const auto n = dfa.num_states();
  for (StateId s = 0; s < n; ++s) {
    std::vector<bool> has(dfa.num_symbols(), false);
    for (auto [sym, t] : dfa.transitions(s)) has[sym] = true;
    for (Symbol sym = 0; sym < dfa.num_symbols(); ++sym) {
      if (has[sym]) continue;
      if (sink == kNoState) {
        sink = dfa.add_state(false);
        for (Symbol x = 0; x < dfa.num_symbols(); ++x) dfa.add_transition(sink, x, sink);
      }
      dfa.add_transition(s, sym, sink);
    }
  }
  return dfa;
}

Nfa complement(const Nfa& nfa) {
  Nfa dfa = complete_dfa(nfa);
  for (StateId s = 0; s < dfa.num_states(); ++s) dfa.set_accepting(s, !dfa.is_accepting(s));
  return dfa;
}

Nfa intersect(const Nfa& a, const Nfa& b) {
  if (a.num_symbols() != b.num_symbols())
    throw InputError("intersection of automata over different alphabets");
  Nfa out(a.num_symbols());
  if (a.num_states() == 0 || b.num_states() == 0) {
    out.add_state(false);
    return out;
  }
  std::unordered_map<std::pair<StateId, StateId>, StateId, PairHash> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto intern = [&](StateId x, StateId y) {
    auto [it, inserted] = ids.try_emplace({x, y}, static_cast<StateId>(pairs.size()));
    if (inserted) {
      out.add_state(a.is_accepting(x) && b.is_accepting(y));
      pairs.emplace_back(x, y);
      check_budget(pairs.size(), "product construction");
    }
    return it->second;
  };
  out.set_initial(intern(a.initial(), b.initial()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, y] = pairs[i];
    auto ta = a.transitions(x);
    auto tb = b.transitions(y);
    // Both lists are sorted by symbol: merge-join.
    std::size_t p = 0, q = 0;
    while (p < ta.size() && q < tb.size()) {
      if (ta[p].first < tb[q].first) {
        ++p;
      } else if (tb[q].first < ta[p].first) {
        ++q;
      } else {
        Symbol sym = ta[p].first;
        std::size_t q_end = q;
        while (q_end < tb.size() && tb[q_end].first == sym) ++q_end;
        for (; p < ta.size() && ta[p].first == sym; ++p)
          for (std::size_t r = q; r < q_end; ++r)
            out.add_transition(static_cast<StateId>(i), sym, intern(ta[p].second, tb[r].second));
        q = q_end;
      }
    }
  }
  return out;
}

Nfa unite(const Nfa& a, const Nfa& b) {
  if (a.num_symbols() != b.num_symbols())
    throw InputError("union of automata over different alphabets");
  Nfa out(a.num_symbols());
  StateId init = out.add_state(false);
  auto copy = [&](const Nfa& src) {
    StateId offset = static_cast<StateId>(out.num_states());
    for (StateId s = 0; s < src.num_states(); ++s) out.add_state(src.is_accepting(s));
    for (StateId s = 0; s < src.num_states(); ++s)
      for (auto [sym, t] : src.transitions(s)) out.add_transition(offset + s, sym, offset + t);
    if (src.num_states() == 0) return;
    StateId src_init = offset + src.initial();
    if (out.is_accepting(src_init)) out.set_accepting(init, true);
    for (auto [sym, t] : src.transitions(src.initial())) out.add_transition(init, sym, offset + t);
  };
  copy(a);
  copy(b);
  out.set_initial(init);
  check_budget(out.num_states(), "union");
  return out;
}

Nfa project(const Nfa& nfa, std::span<const Symbol> symbol_map, std::size_t new_num_symbols) {
  Nfa out(new_num_symbols);
  for (StateId s = 0; s < nfa.num_states(); ++s) out.add_state(nfa.is_accepting(s));
  for (StateId s = 0; s < nfa.num_states(); ++s)
    for (auto [sym, t] : nfa.transitions(s))
      if (symbol_map[sym] != kNoSymbol) out.add_transition(s, symbol_map[sym], t);
  if (nfa.num_states() == 0) out.add_state(false);
  out.set_initial(nfa.initial());
  return out;
}

Nfa minimize(const Nfa& nfa) {
  Nfa dfa = complete_dfa(nfa);
  const std::size_t n = dfa.num_states();
  const std::size_t k = dfa.num_symbols();

  // Dense table of the complete DFA.
  std::vector<StateId> delta(n * k);
  for (StateId s = 0; s < n; ++s)
    for (auto [sym, t] : dfa.transitions(s)) delta[s * k + sym] = t;

  // Moore refinement: block ids until the number of blocks is stable.
  std::vector<StateId> block(n);
  for (StateId s = 0; s < n; ++s) block[s] = dfa.is_accepting(s) ? 1 : 0;
  std::size_t num_blocks = 0;
  while (true) {
    std::map<std::vector<StateId>, StateId> sig_ids;
    std::vector<StateId> next(n);
    for (StateId s = 0; s < n; ++s) {
      std::vector<StateId> sig;
      sig.reserve(k + 1);
      sig.push_back(block[s]);
      for (std::size_t x = 0; x < k; ++x) sig.push_back(block[delta[s * k + x]]);
      auto [it, _] = sig_ids.try_emplace(std::move(sig), static_cast<StateId>(sig_ids.size()));
      next[s] = it->second;
    }
    block.swap(next);
    if (sig_ids.size() == num_blocks) break;
    num_blocks = sig_ids.size();
  }

  // Blocks that can reach acceptance.
  std::vector<bool> live(num_blocks, false);
  for (StateId s = 0; s < n; ++s)
    if (dfa.is_accepting(s)) live[block[s]] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < n; ++s) {
      if (live[block[s]]) continue;
      for (std::size_t x = 0; x < k; ++x)
        if (live[block[delta[s * k + x]]]) {
          live[block[s]] = true;
          changed = true;
          break;
        }
    }
  }

  std::vector<StateId> representative(num_blocks, kNoState);
  for (StateId s = 0; s < n; ++s)
    if (representative[block[s]] == kNoState) representative[block[s]] = s;

  // Canonical breadth-first numbering from the initial block.
  Nfa out(k);
  std::vector<StateId> number(num_blocks, kNoState);
  std::deque<StateId> queue;
  StateId init_block = block[dfa.initial()];
  number[init_block] = out.add_state(dfa.is_accepting(representative[init_block]));
  out.set_initial(number[init_block]);
  queue.push_back(init_block);
  while (!queue.empty()) {
    StateId b = queue.front();
    queue.pop_front();
    if (!live[b]) continue;
    StateId rep = representative[b];
    for (std::size_t x = 0; x < k; ++x) {
      StateId tb = block[delta[rep * k + x]];
      if (!live[tb]) continue;
      if (number[tb] == kNoState) {
        number[tb] = out.add_state(dfa.is_accepting(representative[tb]));
        queue.push_back(tb);
      }
      out.add_transition(number[b], static_cast<Symbol>(x), number[tb]);
    }
  }
  return out;
}

bool accepts(const Nfa& nfa, std::span<const Symbol> word) {
  if (nfa.num_states() == 0) return false;
  std::vector<StateId> current{nfa.initial()}, next;
  for (auto sym : word) {
    if (sym >= nfa.num_symbols()) return false;
    next.clear();
    for (auto s : current)
      for (auto [x, t] : nfa.transitions(s))
        if (x == sym) next.push_back(t);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current.swap(next);
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(),
                     [&](StateId s) { return nfa.is_accepting(s); });
}

std::optional<std::vector<Symbol>> shortest_word(const Nfa& nfa) {
  if (nfa.num_states() == 0) return std::nullopt;
  // Breadth-first over subsets; queue order is (length, lexicographic), so
  // the first accepting subset dequeued carries the least word.
  std::unordered_map<std::vector<StateId>, std::size_t, VectorHash> seen;
  std::vector<std::vector<StateId>> subsets;
  std::vector<std::pair<std::size_t, Symbol>> parent;
  auto push = [&](std::vector<StateId> subset, std::size_t from, Symbol sym) {
    auto [it, inserted] = seen.try_emplace(subset, subsets.size());
    if (!inserted) return;
    subsets.push_back(std::move(subset));
    parent.emplace_back(from, sym);
    check_budget(subsets.size(), "emptiness check");
  };
  push({nfa.initial()}, kNoState, kNoSymbol);
  std::vector<std::vector<StateId>> buckets(nfa.num_symbols());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const auto& cur = subsets[i];
    if (std::any_of(cur.begin(), cur.end(), [&](StateId s) { return nfa.is_accepting(s); })) {
      std::vector<Symbol> word;
      for (std::size_t at = i; parent[at].first != kNoState; at = parent[at].first)
        word.push_back(parent[at].second);
      std::reverse(word.begin(), word.end());
      return word;
    }
    successors(nfa, cur, buckets);
    for (Symbol sym = 0; sym < buckets.size(); ++sym)
      if (!buckets[sym].empty()) push(buckets[sym], i, sym);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// FiniteAutomaton

FiniteAutomaton::FiniteAutomaton(std::vector<EventLabel> alphabet, Nfa nfa)
    : alphabet_(std::move(alphabet)), nfa_(std::move(nfa)) {
  if (alphabet_.size() != nfa_.num_symbols())
    throw InputError("alphabet size does not match the automaton");
  if (!std::is_sorted(alphabet_.begin(), alphabet_.end()) ||
      std::adjacent_find(alphabet_.begin(), alphabet_.end()) != alphabet_.end())
    throw InputError("automaton alphabet must be sorted and unique");
  if (nfa_.num_states() == 0) nfa_.set_initial(nfa_.add_state(false));
}

std::optional<Symbol> FiniteAutomaton::symbol_of(std::string_view label) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), label);
  if (it == alphabet_.end() || *it != label) return std::nullopt;
  return static_cast<Symbol>(it - alphabet_.begin());
}

bool FiniteAutomaton::accepts(const Trace& trace) const {
  std::vector<Symbol> word;
  word.reserve(trace.size());
  for (const auto& label : trace) {
    auto sym = symbol_of(label);
    if (!sym) return false;
    word.push_back(*sym);
  }
  return comply::accepts(nfa_, word);
}

namespace {

void require_same_alphabet(const FiniteAutomaton& a, const FiniteAutomaton& b) {
  if (a.alphabet() != b.alphabet()) throw InputError("automata have different alphabets");
}

}  // namespace

FiniteAutomaton determinize(const FiniteAutomaton& aut) {
  return {aut.alphabet(), determinize(aut.nfa())};
}

FiniteAutomaton minimize(const FiniteAutomaton& aut) {
  return {aut.alphabet(), minimize(aut.nfa())};
}

FiniteAutomaton complement(const FiniteAutomaton& aut) {
  return {aut.alphabet(), complement(aut.nfa())};
}

FiniteAutomaton intersect(const FiniteAutomaton& a, const FiniteAutomaton& b) {
  require_same_alphabet(a, b);
  return {a.alphabet(), intersect(a.nfa(), b.nfa())};
}

FiniteAutomaton unite(const FiniteAutomaton& a, const FiniteAutomaton& b) {
  require_same_alphabet(a, b);
  return {a.alphabet(), unite(a.nfa(), b.nfa())};
}

FiniteAutomaton universal_automaton(std::vector<EventLabel> alphabet) {
  Nfa nfa(alphabet.size());
  StateId s = nfa.add_state(true);
  for (Symbol x = 0; x < alphabet.size(); ++x) nfa.add_transition(s, x, s);
  return {std::move(alphabet), std::move(nfa)};
}

FiniteAutomaton empty_automaton(std::vector<EventLabel> alphabet) {
  Nfa nfa(alphabet.size());
  nfa.add_state(false);
  return {std::move(alphabet), std::move(nfa)};
}

EmptinessResult is_empty(const FiniteAutomaton& aut) {
  EmptinessResult result;
  auto word = shortest_word(aut.nfa());
  if (!word) return result;
  result.empty = false;
  for (auto sym : *word) result.witness.push_back(aut.alphabet()[sym]);
  return result;
}

std::string to_text(const FiniteAutomaton& aut) {
  const auto& nfa = aut.nfa();
  std::ostringstream out;
  out << "initial: " << nfa.initial() << "\n";
  out << "accepting:";
  for (StateId s = 0; s < nfa.num_states(); ++s)
    if (nfa.is_accepting(s)) out << " " << s;
  out << "\n";
  for (StateId s = 0; s < nfa.num_states(); ++s)
    for (auto [sym, t] : nfa.transitions(s))
      out << s << " --" << aut.alphabet()[sym] << "--> " << t << "\n";
  return out.str();
}

std::string to_dot(const FiniteAutomaton& aut, const std::string& name) {
  const auto& nfa = aut.nfa();
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (StateId s = 0; s < nfa.num_states(); ++s)
    out << "  s" << s << " [shape=" << (nfa.is_accepting(s) ? "doublecircle" : "circle")
        << ", label=\"" << s << "\"];\n";
  out << "  __start -> s" << nfa.initial() << ";\n";
  for (StateId s = 0; s < nfa.num_states(); ++s)
    for (auto [sym, t] : nfa.transitions(s))
      out << "  s" << s << " -> s" << t << " [label=\"" << aut.alphabet()[sym] << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace comply
