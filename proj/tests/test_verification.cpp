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

#include "comply/decomposition.hpp"
#include "comply/errors.hpp"
#include "comply/process.hpp"
#include "comply/verification.hpp"
#include "support.hpp"

using namespace comply;
using namespace comply::test;

namespace {

std::vector<ComplianceRule> assertion_rules(const std::string& name) {
  std::vector<ComplianceRule> out;
  auto doc = read_json_file(fixture("rules/" + name + ".json"));
  for (const auto& a : doc.at("assertions")) out.push_back(rule_from_json(a.at("rule")));
  return out;
}

}  // namespace

TEST_SUITE("verification") {

TEST_CASE("local compliance of the Manufacturer with C1") {
  auto chor = load_fixture("running_example.json");
  auto v = check_local_compliance(chor.private_model("Manufacturer"), "Manufacturer",
                                  load_fixture_rule("C1"));
  CHECK(v.outcome == Outcome::correct);
  CHECK(v.product_states > 0);
}

TEST_CASE("local violation comes with the shortest witness") {
  auto g = seq({xor_of({task("a"), seq({})}), task("b")});
  auto must_follow = make_rule("r", {{"b", AO, "P"}, {"a", CO, "P"}}, {{"b", "a"}});
  auto v = check_local_compliance(g, "P", must_follow);
  CHECK(v.outcome == Outcome::violated);
  CHECK(v.witness == Trace{"act:P.b"});
}

TEST_CASE("global compliance in the three views") {
  auto chor = load_fixture("running_example.json");
  CHECK(check_global_compliance(chor, load_fixture_rule("C2"), GlobalMode::public_models).outcome ==
        Outcome::correct);
  auto c3 = check_global_compliance(chor, load_fixture_rule("C3"), GlobalMode::choreography);
  CHECK(c3.outcome == Outcome::inapplicable);
  CHECK_FALSE(c3.reason.empty());
  CHECK(check_global_compliance(chor, load_fixture_rule("C3"), GlobalMode::full_private).outcome ==
        Outcome::correct);
  CHECK(global_mode_from_string("public") == GlobalMode::public_models);
  CHECK_THROWS_AS(global_mode_from_string("everything"), InputError);
}

TEST_CASE("C3 assertions imply C3, the Special Carrier part alone does not") {
  auto gcr = load_fixture_rule("C3");
  auto both = assertion_rules("c3_assertions");
  CHECK(verify_decomposition(both, gcr).outcome == Outcome::correct);
  auto one = assertion_rules("c3_a2_only");
  auto v = verify_decomposition(one, gcr);
  REQUIRE(v.outcome == Outcome::violated);
  CHECK_FALSE(evaluate_rule(v.witness, gcr));
  for (const auto& a : one) CHECK(evaluate_rule(v.witness, a));
}

TEST_CASE("a missing link in the chain is found") {
  auto gcr = make_rule("g", {{"A", AO}, {"C", CO}}, {{"A", "C"}});
  std::vector<ComplianceRule> only_first{make_rule("a1", {{"A", AO}, {"B", CO}}, {{"A", "B"}})};
  auto v = verify_decomposition(only_first, gcr);
  REQUIRE(v.outcome == Outcome::violated);
  CHECK(v.witness == Trace{"A", "B"});
  only_first.push_back(make_rule("a2", {{"B", AO}, {"C", CO}}, {{"B", "C"}}));
  CHECK(verify_decomposition(only_first, gcr).outcome == Outcome::correct);
}

TEST_CASE("a combined async trace violates the Special Carrier assertion") {
  auto chor = load_fixture("example4.json");
  auto gcr = load_fixture_rule("ex4");
  auto d = decompose_with(gcr, chor);
  REQUIRE(d.status == DecompositionStatus::transitive);
  Trace combined{"act:SpecialCarrier.transport_intermediate",
                 "msg:order_special_transport!Manufacturer",
                 "msg:order_special_transport?SpecialCarrier",
                 "act:Manufacturer.quick_test_intermediate"};
  auto acts = activations(combined, gcr);
  REQUIRE(acts.size() == 1);
  CHECK_FALSE(acts.front().satisfied);
  bool sc_flags = false;
  for (const auto& a : d.assertions) {
    if (a.partner == "SpecialCarrier") sc_flags = !evaluate_rule(combined, a.rule);
  }
  CHECK(sc_flags);
}

}  // TEST_SUITE
