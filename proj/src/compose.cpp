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

#include "comply/compose.hpp"

#include <unordered_map>

#include "comply/errors.hpp"

namespace comply {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<StateId>& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h = h * 1000003u ^ x;
    return h;
  }
};

struct Local {
  Nfa dfa;
  // Global symbol -> local symbol, or kNoSymbol when the partner does not
  // take part in the event.
  std::vector<Symbol> local_of;
};

}  // namespace

FiniteAutomaton compose_global(const Choreography& chor, InteractionMode mode, int channel_bound,
                               ModelView view) {
  if (channel_bound < 1) throw InputError("channel bound must be positive");
  auto report = check_compatibility(chor);
  if (!report.ok()) throw InputError("incompatible choreography: " + report.findings.front());

  std::vector<EventLabel> alphabet = chor.alphabet(mode, view);
  const std::size_t k = alphabet.size();

  std::vector<Local> locals;
  for (const auto& p : chor.partners) {
    if (!chor.private_models.count(p)) continue;
    auto aut = model_to_automaton(chor.model(p, view), p, mode);
    Local local{aut.nfa(), std::vector<Symbol>(k, kNoSymbol)};
    for (Symbol x = 0; x < k; ++x)
      if (auto s = aut.symbol_of(alphabet[x])) local.local_of[x] = *s;
    locals.push_back(std::move(local));
  }

  // Async channels: one counter per message name.
  std::vector<int> channel_of(k, -1);
  std::vector<int> delta(k, 0);
  std::size_t num_channels = 0;
  if (mode == InteractionMode::async) {
    std::unordered_map<std::string, int> ids;
    for (Symbol x = 0; x < k; ++x) {
      if (!is_message_label(alphabet[x])) continue;
      auto parts = parse_message_label(alphabet[x]);
      auto [it, _] = ids.try_emplace(parts.name, static_cast<int>(ids.size()));
      channel_of[x] = it->second;
      delta[x] = parts.endpoint == '!' ? 1 : -1;
    }
    num_channels = ids.size();
  }

  const std::size_t np = locals.size();
  Nfa out(k);
  std::unordered_map<std::vector<StateId>, StateId, KeyHash> ids;
  std::vector<std::vector<StateId>> keys;
  auto intern = [&](std::vector<StateId> key) {
    auto [it, inserted] = ids.try_emplace(key, static_cast<StateId>(keys.size()));
    if (inserted) {
      bool acc = true;
      for (std::size_t i = 0; i < np && acc; ++i) acc = locals[i].dfa.is_accepting(key[i]);
      out.add_state(acc);
      keys.push_back(std::move(key));
      if (keys.size() > state_budget())
        throw ResourceError("global composition exceeded the state budget of " +
                            std::to_string(state_budget()) + " states");
    }
    return it->second;
  };

  std::vector<StateId> start(np + num_channels, 0);
  for (std::size_t i = 0; i < np; ++i) start[i] = locals[i].dfa.initial();
  out.set_initial(intern(start));

  auto step = [](const Nfa& dfa, StateId s, Symbol x) {
    for (auto [sym, t] : dfa.transitions(s))
      if (sym == x) return t;
    return kNoState;
  };

  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (Symbol x = 0; x < k; ++x) {
      std::vector<StateId> next = keys[i];
      bool ok = true;
      bool moved = false;
      for (std::size_t p = 0; p < np && ok; ++p) {
        Symbol local = locals[p].local_of[x];
        if (local == kNoSymbol) continue;
        next[p] = step(locals[p].dfa, keys[i][p], local);
        moved = true;
        ok = next[p] != kNoState;
      }
      if (!ok || !moved) continue;
      if (channel_of[x] >= 0) {
        auto& count = next[np + channel_of[x]];
        long updated = static_cast<long>(count) + delta[x];
        if (updated < 0 || updated > channel_bound) continue;
        count = static_cast<StateId>(updated);
      }
      out.add_transition(static_cast<StateId>(i), x, intern(std::move(next)));
    }
  }
  return {std::move(alphabet), minimize(out)};
}

}  // namespace comply
