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

#include <algorithm>

#include "comply/compose.hpp"
#include "comply/errors.hpp"
#include "comply/process.hpp"
#include "support.hpp"

using namespace comply;
using namespace comply::test;

namespace {

std::set<Trace> traces(const ProcessGraph& g, std::size_t max_len = 6) {
  return enumerate_traces(g, "", InteractionMode::atomic, max_len);
}

}  // namespace

TEST_SUITE("process") {

TEST_CASE("block semantics by enumeration") {
  CHECK(traces(seq({task("a"), task("b")})) == std::set<Trace>{{"a", "b"}});
  CHECK(traces(xor_of({task("a"), task("b")})) == std::set<Trace>{{"a"}, {"b"}});
  CHECK(traces(and_of({task("a"), task("b")})) == std::set<Trace>{{"a", "b"}, {"b", "a"}});
  CHECK(traces(loop(task("a"), 2)) == std::set<Trace>{{}, {"a"}, {"a", "a"}});
  CHECK(traces(and_of({seq({task("a"), task("b")}), task("c")})) ==
        std::set<Trace>{{"a", "b", "c"}, {"a", "c", "b"}, {"c", "a", "b"}});
  CHECK(traces(xor_of({task("a"), seq({})})) == std::set<Trace>{{"a"}, {}});
}

TEST_CASE("partner and message labels") {
  auto g = seq({task("a"), send_task("s", "m", "Q"), receive_task("r", "n", "Q")});
  CHECK(traces(g).size() == 1);
  auto atomic = enumerate_traces(g, "P", InteractionMode::atomic, 5);
  CHECK(*atomic.begin() == Trace{"act:P.a", "msg:m", "msg:n"});
  auto async = enumerate_traces(g, "P", InteractionMode::async, 5);
  CHECK(*async.begin() == Trace{"act:P.a", "msg:m!P", "msg:n?P"});
}

TEST_CASE("model automaton accepts exactly the enumerated runs") {
  auto g = seq({task("a"), xor_of({task("b"), and_of({task("c"), task("d")})}), loop(task("e"), 2)});
  auto aut = model_to_automaton(g, "", InteractionMode::atomic);
  auto runs = traces(g, 6);
  for (const auto& t : runs) CHECK(aut.accepts(t));
  CHECK(aut.accepts({"a", "b", "e", "e", "e"}));  // loops are cycles in the automaton
  CHECK_FALSE(aut.accepts({"a", "c"}));
  CHECK_FALSE(aut.accepts({"b"}));
}

TEST_CASE("loop freedom") {
  auto g = seq({task("a"), loop(task("b")), task("c")});
  CHECK(is_loop_free(g, "a"));
  CHECK_FALSE(is_loop_free(g, "b"));
}

TEST_CASE("model validation findings") {
  CHECK(validate_model(seq({task("a"), send_task("s", "m", "Q")}), "P", {"P", "Q"}).ok());
  CHECK_FALSE(validate_model(seq({task("a"), task("a")}), "P", {"P"}).ok());
  CHECK_FALSE(validate_model(seq({send_task("s", "m", "Z")}), "P", {"P", "Q"}).ok());
}

TEST_CASE("fixtures are consistent and compatible") {
  for (auto name : {"running_example.json", "running_example_ex3.json", "example4.json",
                    "adapted_ex8.json", "manufacturing.json"}) {
    CAPTURE(name);
    auto chor = load_fixture(name);
    CHECK(check_consistency(chor).ok());
    CHECK(check_compatibility(chor).ok());
  }
}

TEST_CASE("gamma links the running example's special transport order") {
  auto chor = load_fixture("running_example.json");
  auto gamma = derive_gamma(chor);
  bool found = std::any_of(gamma.begin(), gamma.end(), [](const GammaLink& g) {
    return g.sender == "Middleman" && g.receiver == "SpecialCarrier" &&
           g.send_node == "order_special_transport";
  });
  CHECK(found);
  CHECK(chor.owner_of("safety_check") == std::optional<std::string>("SpecialCarrier"));
  CHECK_THROWS_AS(chor.private_model("Nobody"), InputError);
}

TEST_CASE("a partner whose receive never gets a send is incompatible") {
  auto chor = load_fixture("running_example.json");
  auto& sc = chor.private_models.at("SpecialCarrier");
  sc = seq({receive_task("ghost", "ghost_msg", "Middleman"), sc});
  chor.public_models.erase("SpecialCarrier");
  CHECK_FALSE(check_compatibility(chor).ok());
}

TEST_CASE("choreography json round trip") {
  auto chor = load_fixture("running_example.json");
  CHECK(choreography_from_json(choreography_to_json(chor)) == chor);
  auto doc = choreography_to_json(chor);
  doc.erase("partners");
  CHECK_THROWS_AS(choreography_from_json(doc), InputError);
}

TEST_CASE("async composition holds a message in the channel") {
  Choreography chor;
  chor.partners = {"P", "Q"};
  chor.private_models["P"] = seq({send_task("s", "m", "Q")});
  chor.private_models["Q"] = seq({receive_task("r", "m", "P")});
  chor.gamma = derive_gamma(chor);
  auto atomic = compose_global(chor, InteractionMode::atomic);
  CHECK(atomic.accepts({"msg:m"}));
  auto async = compose_global(chor, InteractionMode::async, 1);
  CHECK(async.accepts({"msg:m!P", "msg:m?Q"}));
  CHECK_FALSE(async.accepts({"msg:m?Q", "msg:m!P"}));
}

}  // TEST_SUITE
