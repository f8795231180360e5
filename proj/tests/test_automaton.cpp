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

#include "doctest.h"

#include "comply/automaton.hpp"
#include "comply/errors.hpp"
#include "comply/rule_automaton.hpp"
#include "support.hpp"

using namespace comply;
using namespace comply::test;

namespace {

// Words over {a, b} containing "ab" as a factor, built as an NFA.
FiniteAutomaton contains_ab() {
  Nfa n(2);
  auto s0 = n.add_state();
  auto s1 = n.add_state();
  auto s2 = n.add_state(true);
  n.set_initial(s0);
  n.add_transition(s0, 0, s0);
  n.add_transition(s0, 1, s0);
  n.add_transition(s0, 0, s1);
  n.add_transition(s1, 1, s2);
  n.add_transition(s2, 0, s2);
  n.add_transition(s2, 1, s2);
  return FiniteAutomaton({"a", "b"}, n);
}

}  // namespace

TEST_SUITE("automaton") {

TEST_CASE("nondeterministic language and determinization") {
  auto aut = contains_ab();
  CHECK_FALSE(aut.nfa().is_deterministic());
  auto dfa = determinize(aut);
  CHECK(dfa.nfa().is_deterministic());
  for (const Trace& t : std::vector<Trace>{{}, {"a"}, {"b", "a"}, {"a", "b"}, {"b", "a", "b"}, {"a", "a", "b", "a"}}) {
    CHECK(aut.accepts(t) == dfa.accepts(t));
  }
  CHECK(aut.accepts({"b", "a", "b"}));
  CHECK_FALSE(aut.accepts({"b", "b", "a"}));
  // Minimal DFA for "contains ab" has three states.
  CHECK(minimize(aut).num_states() == 3);
}

TEST_CASE("complement, intersection and union") {
  auto aut = contains_ab();
  auto neg = complement(aut);
  CHECK(neg.accepts({"b", "a"}));
  CHECK_FALSE(neg.accepts({"a", "b"}));
  CHECK(is_empty(intersect(aut, neg)).empty);
  auto all = unite(aut, neg);
  CHECK(all.accepts({}));
  CHECK(all.accepts({"a", "b"}));
  CHECK(is_empty(complement(all)).empty);
}

TEST_CASE("emptiness witness is the shortest, lexicographically least word") {
  auto res = is_empty(contains_ab());
  REQUIRE_FALSE(res.empty);
  CHECK(res.witness == Trace{"a", "b"});
  CHECK(is_empty(empty_automaton({"a"})).empty);
  auto uni = is_empty(universal_automaton({"a"}));
  CHECK_FALSE(uni.empty);
  CHECK(uni.witness.empty());
}

TEST_CASE("rule automaton agrees with the trace semantics on a response rule") {
  auto r = make_rule("resp", {{"A", AO}, {"B", CO}}, {{"A", "B"}});
  std::vector<EventLabel> alphabet{"A", "B", "C"};
  auto aut = rule_to_automaton(r, alphabet);
  CHECK(aut.accepts({}));
  CHECK(aut.accepts({"A", "C", "B"}));
  CHECK_FALSE(aut.accepts({"A", "C"}));
  CHECK_FALSE(aut.accepts({"A", "B", "A"}));
}

TEST_CASE("state budget is enforced") {
  const auto saved = state_budget();
  set_state_budget(2);
  CHECK_THROWS_AS(determinize(contains_ab()), ResourceError);
  set_state_budget(saved);
  CHECK_NOTHROW(determinize(contains_ab()));
}

TEST_CASE("dot export names every state") {
  auto dot = to_dot(contains_ab(), "ab");
  CHECK(dot.find("digraph \"ab\"") != std::string::npos);
  CHECK(dot.find("s2") != std::string::npos);
}

}  // TEST_SUITE
