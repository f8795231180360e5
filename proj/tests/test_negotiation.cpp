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

#include "comply/errors.hpp"
#include "comply/negotiation.hpp"
#include "comply/process.hpp"
#include "comply/reports.hpp"
#include "support.hpp"

using namespace comply;
using namespace comply::test;

namespace {

void collect_strings(const nlohmann::json& j, std::set<std::string>& out) {
  if (j.is_string()) out.insert(j.get<std::string>());
  if (j.is_structured())
    for (const auto& v : j) collect_strings(v, out);
}

std::string canonical(const Decomposition& d) { return decomposition_to_json(d).dump(); }

}  // namespace

TEST_SUITE("negotiation") {

TEST_CASE("leader mode on C3 reproduces the central decomposition") {
  auto chor = load_fixture("running_example.json");
  auto gcr = load_fixture_rule("C3");
  auto out = run_negotiation(chor, gcr, 7, Strategy::leader);
  CHECK(out.leader == "Middleman");
  CHECK(canonical(out.decomposition) == canonical(decompose_with(gcr, chor)));
  CHECK(out.decomposition.assertions.size() == 2);
  CHECK(out.rounds == out.transcript.size());
  REQUIRE_FALSE(out.transcript.empty());
  CHECK(out.transcript.front().kind == MessageKind::leader_announce);
  for (std::size_t i = 1; i < out.transcript.size(); ++i)
    CHECK(out.transcript[i].round > out.transcript[i - 1].round);
}

TEST_CASE("the supplier and carrier rule ends with the sync message in both modes") {
  auto chor = load_fixture("running_example_ex3.json");
  auto gcr = load_fixture_rule("ex3");
  auto central = decompose_with(gcr, chor);
  for (auto s : {Strategy::leader, Strategy::leaderless}) {
    CAPTURE(to_string(s));
    auto out = run_negotiation(chor, gcr, 7, s);
    CHECK(out.decomposition.status == DecompositionStatus::required_sync);
    CHECK(out.decomposition.sync_messages == central.sync_messages);
    CHECK(out.decomposition.choreography == central.choreography);
    bool sync_sent = false;
    for (const auto& m : out.transcript) sync_sent |= m.kind == MessageKind::sync_required;
    CHECK(sync_sent);
  }
}

TEST_CASE("transcripts are deterministic and replay to the outcome") {
  auto chor = load_fixture("running_example.json");
  auto gcr = load_fixture_rule("ex6");
  for (auto s : {Strategy::leader, Strategy::leaderless}) {
    auto a = run_negotiation(chor, gcr, 11, s);
    auto b = run_negotiation(chor, gcr, 11, s);
    CHECK(a.transcript == b.transcript);
    auto lines = transcript_to_jsonl(a.transcript);
    CHECK(transcript_from_jsonl(lines) == a.transcript);
    CHECK(canonical(replay_transcript(transcript_from_jsonl(lines))) == canonical(a.decomposition));
  }
  // The seed is recorded but does not steer the protocol.
  auto c = run_negotiation(chor, gcr, 12, Strategy::leader);
  CHECK(canonical(c.decomposition) == canonical(run_negotiation(chor, gcr, 11, Strategy::leader).decomposition));
}

TEST_CASE("no payload names another partner's private tasks") {
  auto chor = load_fixture("adapted_ex8.json");
  for (auto rule : {"ex8", "C3"}) {
    auto gcr = load_fixture_rule(rule);
    std::set<std::string> gcr_activities;
    for (const auto& n : gcr.nodes) gcr_activities.insert(n.activity);
    for (auto s : {Strategy::leader, Strategy::leaderless}) {
      auto out = run_negotiation(chor, gcr, 1, s);
      for (const auto& msg : out.transcript) {
        std::set<std::string> words;
        collect_strings(msg.payload, words);
        for (const auto& [partner, model] : chor.private_models) {
          if (partner == msg.from) continue;
          for (const auto* a : activities(model)) {
            if (a->activity != ActivityKind::private_task || gcr_activities.count(a->label)) continue;
            CAPTURE(msg.round);
            CHECK_MESSAGE(!words.count(a->label), a->label << " leaked from " << partner);
          }
        }
      }
    }
  }
}

TEST_CASE("agents only hold their own models") {
  auto chor = load_fixture("running_example.json");
  PartnerAgent agent(chor, "Supplier");
  CHECK(agent.view().private_models.size() == 1);
  CHECK(agent.view().private_models.count("Supplier") == 1);
  for (const auto& g : agent.view().gamma) CHECK((g.sender == "Supplier" || g.receiver == "Supplier"));
  CHECK_THROWS_AS(agent.view().private_model("Middleman"), InputError);
}

TEST_CASE("unsound choreographies are rejected") {
  auto chor = load_fixture("running_example.json");
  chor.private_models.at("SpecialCarrier") =
      seq({receive_task("ghost", "ghost_msg", "Middleman"), chor.private_models.at("SpecialCarrier")});
  chor.public_models.erase("SpecialCarrier");
  CHECK_THROWS_AS(run_negotiation(chor, load_fixture_rule("C3"), 7), InputError);
}

TEST_CASE("wire format") {
  CHECK(to_string(MessageKind::candidate_proposal) == "CandidateProposal");
  CHECK(message_kind_from_string("SyncRequired") == MessageKind::sync_required);
  CHECK_THROWS_AS(message_kind_from_string("Gossip"), InputError);
  CHECK(strategy_from_string("leaderless") == Strategy::leaderless);
  CHECK_THROWS_AS(transcript_from_jsonl("{not json}\n"), InputError);
  CHECK_THROWS_AS(replay_transcript({}), InputError);
}

}  // TEST_SUITE
