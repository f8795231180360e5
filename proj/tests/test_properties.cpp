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

#include <random>

#include "comply/decomposition.hpp"
#include "comply/errors.hpp"
#include "comply/generator.hpp"
#include "comply/negotiation.hpp"
#include "comply/reports.hpp"
#include "comply/rule_automaton.hpp"
#include "comply/sweep.hpp"
#include "comply/templates.hpp"
#include "comply/verification.hpp"
#include "support.hpp"

using namespace comply;
using namespace comply::test;

namespace {

// Calls f on every word of length <= max_len over the alphabet.
template <typename F>
void for_each_word(const std::vector<EventLabel>& alphabet, std::size_t max_len, F&& f) {
  Trace word;
  auto rec = [&](auto&& self) -> void {
    f(word);
    if (word.size() == max_len) return;
    for (const auto& l : alphabet) {
      word.push_back(l);
      self(self);
      word.pop_back();
    }
  };
  rec(rec);
}

bool any_in(const Trace& t, const std::string& l, std::size_t from, std::size_t to) {
  for (std::size_t k = from; k < to; ++k)
    if (t[k] == l) return true;
  return false;
}

std::vector<ComplianceRule> template_rules() {
  std::vector<ComplianceRule> out;
  for (const auto& id : template_ids()) {
    auto tpl = theorem_template(id);
    out.push_back(tpl.conclusion);
    for (const auto& p : tpl.premises) out.push_back(p.rule);
  }
  return out;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("binary rules match their first-order reading") {
  const std::vector<EventLabel> sigma{"A", "B", "C"};
  auto resp = make_rule("resp", {{"A", AO}, {"B", CO}}, {{"A", "B"}});
  auto prec = make_rule("prec", {{"B", CO}, {"A", AO}}, {{"B", "A"}});
  auto abs_after = make_rule("aa", {{"A", AO}, {"B", CA}}, {{"A", "B"}});
  auto abs_before = make_rule("ab", {{"B", CA}, {"A", AO}}, {{"B", "A"}});
  std::size_t mismatches = 0;
  for_each_word(sigma, 7, [&](const Trace& t) {
    bool r = true, p = true, aa = true, ab = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] != "A") continue;
      r = r && any_in(t, "B", i + 1, t.size());
      p = p && any_in(t, "B", 0, i);
      aa = aa && !any_in(t, "B", i + 1, t.size());
      ab = ab && !any_in(t, "B", 0, i);
    }
    mismatches += (evaluate_rule(t, resp) != r) + (evaluate_rule(t, prec) != p) +
                  (evaluate_rule(t, abs_after) != aa) + (evaluate_rule(t, abs_before) != ab);
  });
  CHECK(mismatches == 0);
}

TEST_CASE("automata agree with the trace semantics on every template shape") {
  std::size_t mismatches = 0;
  for (const auto& rule : template_rules()) {
    auto alphabet = rule.labels();
    alphabet.push_back("Z");
    alphabet = normalize_alphabet(alphabet);
    auto aut = rule_to_automaton(rule, alphabet);
    for_each_word(alphabet, 4, [&](const Trace& t) {
      bool expected = evaluate_rule(t, rule);
      if (aut.accepts(t) != expected) ++mismatches;
      bool all = true;
      for (const auto& a : activations(t, rule)) all = all && a.satisfied;
      if (all != expected) ++mismatches;
    });
  }
  CHECK(mismatches == 0);
}

TEST_CASE("traces without antecedence letters are vacuously compliant") {
  for (const auto& rule : template_rules()) {
    std::vector<EventLabel> others{"Z"};
    for (const auto& n : rule.nodes)
      if (n.pattern != Pattern::ante_occ) others.push_back(n.canonical_label());
    for_each_word(others, 4, [&](const Trace& t) { CHECK(evaluate_rule(t, rule)); });
  }
}

TEST_CASE("serial and parallel sweeps agree") {
  auto pred = [](std::span<const Letter> w) {
    int sum = 0;
    for (auto l : w) sum += l;
    return w.size() == 6 && sum == 7;
  };
  CHECK(count_serial(3, 7, pred) == count_parallel(3, 7, pred));
  CHECK(find_first_serial(3, 7, pred) == find_first_parallel(3, 7, pred));
  CHECK(sweep_size(3, 2) == 13);
  CHECK_FALSE(find_first_parallel(2, 4, [](std::span<const Letter>) { return false; }));
}

TEST_CASE("generated choreographies are sound and their planted rules decompose soundly") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    CAPTURE(seed);
    GeneratorParams params;
    params.partners = 2 + static_cast<int>(seed % 3);
    params.plant_chain = seed % 2 == 0;
    auto gen = generate_case(params, seed);
    CHECK(check_consistency(gen.chor).ok());
    CHECK(check_compatibility(gen.chor).ok());
    REQUIRE(gen.planted);
    auto d = decompose_with(*gen.planted, gen.chor);
    CHECK(d.status != DecompositionStatus::failed);
    if (d.status == DecompositionStatus::failed) continue;
    CHECK(verify_decomposition(d.rules(), *gen.planted).ok());
    const auto& models = d.choreography ? *d.choreography : gen.chor;
    for (const auto& a : d.assertions) {
      CHECK(check_local_compliance(models.private_model(a.partner), a.partner, a.rule).ok());
    }
  }
}

TEST_CASE("generation is reproducible per seed") {
  GeneratorParams params;
  CHECK(generate_case(params, 5).chor == generate_case(params, 5).chor);
  CHECK(random_tree_rule(generate_case(params, 5).chor, 6, 9) ==
        random_tree_rule(generate_case(params, 5).chor, 6, 9));
  GeneratorParams bad;
  bad.partners = 1;
  CHECK_THROWS_AS(generate_case(bad, 1), InputError);
}

TEST_CASE("negotiation equals the central result on generated cases") {
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    CAPTURE(seed);
    GeneratorParams params;
    params.partners = 3;
    auto gen = generate_case(params, seed);
    auto central = decomposition_to_json(decompose_with(*gen.planted, gen.chor)).dump();
    for (auto s : {Strategy::leader, Strategy::leaderless}) {
      CHECK(decomposition_to_json(run_negotiation(gen.chor, *gen.planted, seed, s).decomposition).dump() ==
            central);
    }
  }
}

}  // TEST_SUITE
