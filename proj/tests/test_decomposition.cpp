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

#include <set>

#include "comply/decomposition.hpp"
#include "comply/errors.hpp"
#include "comply/verification.hpp"
#include "support.hpp"

using namespace comply;
using namespace comply::test;

namespace {

std::set<std::string> messages_in(const Decomposition& d) {
  std::set<std::string> out;
  for (const auto& a : d.assertions)
    for (const auto& n : a.rule.nodes)
      if (n.is_message()) out.insert(n.activity);
  return out;
}

std::vector<std::string> partners_of(const Decomposition& d) {
  std::vector<std::string> out;
  for (const auto& a : d.assertions) out.push_back(a.partner);
  return out;
}

const Assertion& at(const Decomposition& d, const std::string& partner) {
  for (const auto& a : d.assertions)
    if (a.partner == partner) return a;
  FAIL("no assertion for " << partner);
  throw std::logic_error("unreachable");
}

bool has_edge(const ComplianceRule& r, const std::string& from, const std::string& to) {
  for (const auto& e : r.edges)
    if (r.node(e.from).activity == from && r.node(e.to).activity == to) return true;
  return false;
}

Pattern pattern_of(const ComplianceRule& r, const std::string& activity) {
  for (const auto& n : r.nodes)
    if (n.activity == activity) return n.pattern;
  FAIL("no node " << activity);
  return Pattern::ante_occ;
}

}  // namespace

TEST_SUITE("decomposition") {

TEST_CASE("C3 splits into the Middleman and Special Carrier assertions") {
  auto chor = load_fixture("running_example.json");
  auto d = decompose(load_fixture_rule("C3"), chor);
  CHECK(d.status == DecompositionStatus::transitive);
  CHECK(d.sync_messages.empty());
  REQUIRE(d.assertions.size() == 2);

  const auto& mm = at(d, "Middleman").rule;
  CHECK(mm.nodes.size() == 2);
  CHECK(pattern_of(mm, "get_permission_of_authority") == CO);
  CHECK(pattern_of(mm, "order_special_transport") == AO);
  CHECK(has_edge(mm, "get_permission_of_authority", "order_special_transport"));

  const auto& sc = at(d, "SpecialCarrier").rule;
  CHECK(sc.nodes.size() == 3);
  CHECK(pattern_of(sc, "order_special_transport") == CO);
  CHECK(pattern_of(sc, "safety_check") == CO);
  CHECK(pattern_of(sc, "transport_intermediate") == AO);
  CHECK(has_edge(sc, "order_special_transport", "safety_check"));
  CHECK(has_edge(sc, "safety_check", "transport_intermediate"));

  CHECK(verify_decomposition(d.rules(), load_fixture_rule("C3")).ok());
  CHECK(d.ops.total() > 0);
  for (const auto& a : d.assertions) {
    CHECK(a.provenance.gcr_id == "C3");
    CHECK(a.provenance.method == "alg1");
  }
}

TEST_CASE("theta prefers the shared special transport order") {
  auto chor = load_fixture("running_example.json");
  auto gcr = load_fixture_rule("ex1");
  auto theta = compute_theta(chor, gcr.nodes[0], gcr.nodes[1], true);
  CHECK(theta.n_partner == "Middleman");
  CHECK(theta.s_partner == "SpecialCarrier");
  REQUIRE_FALSE(theta.pairs.empty());
  CHECK(theta.pairs.front().m_n == "order_special_transport");
  CHECK(theta.pairs.front().m_s == "order_special_transport");
  CHECK(theta.pairs.front().hops.empty());
  // The waybill path is a valid alternative.
  bool waybill = false;
  for (const auto& p : theta.pairs) waybill |= p.m_s == "waybill_for_intermediate";
  CHECK(waybill);
}

TEST_CASE("response transitivity goes through the special transport order") {
  auto d = apply_theorem_template("T1a", load_fixture_rule("ex1"), load_fixture("running_example.json"));
  REQUIRE_FALSE(d.empty());
  CHECK(partners_of(d.front()) == std::vector<std::string>{"Middleman", "SpecialCarrier"});
  CHECK(messages_in(d.front()) == std::set<std::string>{"order_special_transport"});
}

TEST_CASE("a forwarded order links Manufacturer and Supplier through the Middleman") {
  auto d = apply_theorem_template("Cor1", load_fixture_rule("ex2"), load_fixture("running_example.json"));
  REQUIRE_FALSE(d.empty());
  CHECK(partners_of(d.front()) == std::vector<std::string>{"Manufacturer", "Middleman", "Supplier"});
  CHECK(messages_in(d.front()) ==
        std::set<std::string>{"order_intermediate", "fwd_order_intermediate"});
}

TEST_CASE("a two-by-two chain uses three interactions") {
  auto d = apply_theorem_template("T3", load_fixture_rule("ex6"), load_fixture("running_example.json"));
  REQUIRE_FALSE(d.empty());
  CHECK(partners_of(d.front()) ==
        std::vector<std::string>{"Middleman", "Supplier", "SpecialCarrier", "Manufacturer"});
  CHECK(messages_in(d.front()) == std::set<std::string>{"fwd_order_intermediate",
                                                        "waybill_for_intermediate",
                                                        "arrival_of_intermediate"});
}

TEST_CASE("between rule with one Middleman alternative") {
  auto d = apply_theorem_template("T5", load_fixture_rule("ex7"), load_fixture("running_example.json"));
  REQUIRE(d.size() == 1);  // the Middleman has one single alternative
  CHECK(messages_in(d.front()) == std::set<std::string>{"order_intermediate", "fwd_order_intermediate",
                                                        "order_special_transport",
                                                        "waybill_for_intermediate"});
}

TEST_CASE("between rules on the adapted models") {
  auto chor = load_fixture("adapted_ex8.json");
  auto d8 = apply_theorem_template("T6", load_fixture_rule("ex8"), chor);
  REQUIRE_FALSE(d8.empty());
  CHECK(messages_in(d8.front()) ==
        std::set<std::string>{"request_details", "production_status", "transport_details",
                              "waybill_for_intermediate", "transport_confirmation"});
  auto d9 = apply_theorem_template("T7", load_fixture_rule("ex9"), chor);
  REQUIRE_FALSE(d9.empty());
  CHECK(messages_in(d9.front()) ==
        std::set<std::string>{"production_status", "transport_details", "transport_confirmation"});
  CHECK(select_template(load_fixture_rule("ex9"), chor) ==
        std::vector<std::string>{"T7", "T5", "T6"});
}

TEST_CASE("unrelated supplier and carrier steps need a sync message") {
  auto chor = load_fixture("running_example_ex3.json");
  auto gcr = load_fixture_rule("ex3");
  auto d = decompose(gcr, chor);
  REQUIRE(d.status == DecompositionStatus::required_sync);
  REQUIRE(d.sync_messages.size() == 1);
  const auto& s = d.sync_messages.front();
  CHECK(s.sender == "Supplier");
  CHECK(s.send_after == "prepare_transport");
  CHECK(s.receiver == "SpecialCarrier");
  CHECK(s.receive_before == "safety_check");
  REQUIRE(d.choreography);
  CHECK(check_consistency(*d.choreography).ok());
  CHECK(check_compatibility(*d.choreography).ok());
  CHECK(verify_decomposition(d.rules(), gcr).ok());
  for (const auto& a : d.assertions) {
    CHECK(check_local_compliance(d.choreography->private_model(a.partner), a.partner, a.rule).ok());
  }

  DecomposeOptions no_sync;
  no_sync.allow_sync = false;
  auto failed = decompose(gcr, chor, no_sync);
  CHECK(failed.status == DecompositionStatus::failed);
  CHECK_FALSE(failed.reason.empty());
}

TEST_CASE("absence before a quick test uses the leftward zig zag") {
  auto d = apply_theorem_template("T2b", load_fixture_rule("ex4"), load_fixture("example4.json"));
  REQUIRE_FALSE(d.empty());
  const auto& sc = at(d.front(), "SpecialCarrier").rule;
  CHECK(pattern_of(sc, "transport_intermediate") == CA);
  CHECK(pattern_of(sc, "order_special_transport") == AO);
  const auto& mf = at(d.front(), "Manufacturer").rule;
  CHECK(pattern_of(mf, "quick_test_intermediate") == AO);
}

TEST_CASE("manufacturing rule is lifted with a data connection") {
  auto d = decompose(load_fixture_rule("mfg_c1"), load_fixture("manufacturing.json"));
  REQUIRE(d.status == DecompositionStatus::required_sync);
  REQUIRE(d.sync_messages.size() == 1);
  CHECK(d.sync_messages.front().sender == "Partner2");
  CHECK(d.sync_messages.front().send_after == "resource_planning");
  CHECK(d.sync_messages.front().receiver == "Partner1");
  CHECK(d.sync_messages.front().receive_before == "place_order");
  CHECK(verify_decomposition(d.rules(), load_fixture_rule("mfg_c1")).ok());
}

TEST_CASE("sync insertion rejects bad requests") {
  auto chor = load_fixture("running_example.json");
  SyncMessage s{"sync.x", "Supplier", "prepare_transport", "SpecialCarrier", "safety_check"};
  auto updated = insert_sync_message(chor, s);
  CHECK(updated.gamma.size() == chor.gamma.size() + 1);
  CHECK_THROWS_AS(insert_sync_message(updated, s), InputError);
  SyncMessage unknown = s;
  unknown.receiver = "Nobody";
  CHECK_THROWS_AS(insert_sync_message(chor, unknown), InputError);
  SyncMessage no_anchor = s;
  no_anchor.send_after = "nothing_like_this";
  CHECK_THROWS_AS(insert_sync_message(chor, no_anchor), InputError);
}

TEST_CASE("preconditions of the breadth-first decomposition") {
  auto chor = load_fixture("running_example.json");
  auto two_ante = make_rule("two", {{"get_permission_of_authority", AO, "Middleman"},
                                    {"transport_intermediate", AO, "SpecialCarrier"},
                                    {"safety_check", CO, "SpecialCarrier"}},
                            {{"get_permission_of_authority", "transport_intermediate", ANTE},
                             {"transport_intermediate", "safety_check"}});
  CHECK_THROWS_AS(decompose(two_ante, chor), InputError);
  auto unknown = make_rule("u", {{"a", AO, "Ghost"}, {"safety_check", CO, "SpecialCarrier"}},
                           {{"a", "safety_check"}});
  CHECK_THROWS_AS(decompose(unknown, chor), InputError);
  CHECK_THROWS_AS(decompose_with(unknown, chor), InputError);
  CHECK_THROWS_AS(decompose_with(two_ante, chor, "T1a"), InputError);
}

TEST_CASE("a rule inside one partner needs no messages") {
  auto chor = load_fixture("running_example.json");
  auto local = make_rule("local", {{"safety_check", CO, "SpecialCarrier"},
                                   {"transport_intermediate", AO, "SpecialCarrier"}},
                         {{"safety_check", "transport_intermediate"}});
  auto d = decompose_with(local, chor);
  REQUIRE(d.assertions.size() == 1);
  CHECK(d.assertions.front().partner == "SpecialCarrier");
  CHECK(messages_in(d).empty());
}

}  // TEST_SUITE
