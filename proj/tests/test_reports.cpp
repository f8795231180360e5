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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "comply/errors.hpp"
#include "comply/reports.hpp"
#include "comply/theorem.hpp"
#include "support.hpp"

using namespace comply;
using namespace comply::test;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(COMPLY_CLI) + " " + args + " 2>/dev/null";
  Run r{0, ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (auto n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& name) { return fixture(name).string(); }

}  // namespace

TEST_SUITE("reports") {

TEST_CASE("decomposition report round trip") {
  auto d = decompose_with(load_fixture_rule("ex3"), load_fixture("running_example_ex3.json"));
  auto doc = decomposition_to_json(d);
  CHECK(doc.at("status") == "RequiredSync");
  auto back = decomposition_from_json(doc);
  CHECK(back.gcr_id == d.gcr_id);
  CHECK(back.status == d.status);
  CHECK(back.sync_messages == d.sync_messages);
  CHECK(back.rules() == d.rules());
  CHECK(back.ops.total() == d.ops.total());
  CHECK(decomposition_to_json(back) == doc);
  doc["status"] = "Perhaps";
  CHECK_THROWS_AS(decomposition_from_json(doc), InputError);
}

TEST_CASE("premise instances round trip") {
  auto chor = load_fixture("running_example.json");
  ModelOracle oracle(chor);
  auto tpl = theorem_template("T1a");
  auto cands = generate_candidates(oracle, tpl, load_fixture_rule("ex1"), 0, "Middleman");
  REQUIRE_FALSE(cands.empty());
  for (const auto& c : cands) {
    auto back = premise_instance_from_json(premise_instance_to_json(c));
    CHECK(back.rule == c.rule);
    CHECK(back.binding == c.binding);
    CHECK(back.partner == c.partner);
  }
}

TEST_CASE("timing fields are optional") {
  TheoremOptions o;
  o.max_len = 3;
  auto r = validate_theorem("T1a", o);
  CHECK(theorem_result_to_json(r, true).contains("wallMs"));
  CHECK_FALSE(theorem_result_to_json(r, false).contains("wallMs"));
  auto text = rule_text(load_fixture_rule("C3"));
  CHECK(text.find("[transport_intermediate]") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  auto ok = cli("decompose --chor " + fx("running_example.json") + " --rule " + fx("rules/C3.json"));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("C3.A1") != std::string::npos);

  auto bad = cli("verify --assertions " + fx("rules/c3_a2_only.json") + " --rule " + fx("rules/C3.json"));
  CHECK(bad.code == 1);
  CHECK(bad.out.find("witness") != std::string::npos);

  CHECK(cli("theorems --id T1a --alphabet A,B,C --max-len 7").code == 0);
  CHECK(cli("theorems --id T1a --converse --max-len 3").code == 1);
  CHECK(cli("decompose --chor /nonexistent.json --rule x.json").code == 2);
  CHECK(cli("verify --all --assertions " + fx("rules/c3_a2_only.json") + " --rule " + fx("rules/C3.json")).code == 2);
  CHECK(cli("check-global --state-budget 4 --chor " + fx("running_example.json") + " --rule " +
            fx("rules/C2.json")).code == 3);
  CHECK(cli("check-local --chor " + fx("running_example.json") +
            " --partner Manufacturer --rule " + fx("rules/C1.json")).code == 0);
}

TEST_CASE("cli json reports are byte-stable without timestamps") {
  const std::string args = "negotiate --format json --no-timestamp --chor " + fx("running_example.json") +
                           " --rule " + fx("rules/C3.json");
  auto a = cli(args);
  auto b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto doc = nlohmann::json::parse(a.out);
  CHECK(doc.at("leader") == "Middleman");
  CHECK(decomposition_from_json(doc.at("decomposition")).assertions.size() == 2);
}

}  // TEST_SUITE
