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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "comply/automaton.hpp"
#include "comply/decomposition.hpp"
#include "comply/generator.hpp"
#include "comply/negotiation.hpp"
#include "comply/reports.hpp"
#include "comply/rule_automaton.hpp"
#include "comply/templates.hpp"
#include "comply/theorem.hpp"
#include "comply/verification.hpp"
#include "support.hpp"

using namespace comply;
using namespace comply::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failure notes for one criterion.
struct Check {
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) notes.push_back(what);
  }
};

int failures = 0;

void criterion(int n, const std::string& title, double budget_s,
               const std::function<void(Check&)>& body) {
  Check c;
  auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.notes.push_back(std::string("exception: ") + e.what());
  }
  double t = seconds_since(start);
  c.expect(t < budget_s, "took " + std::to_string(t) + " s, budget " + std::to_string(budget_s) + " s");
  std::ostringstream line;
  line << (c.notes.empty() ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << title << " ("
       << std::fixed;
  line.precision(2);
  line << t << " s)";
  std::cout << line.str() << std::endl;
  for (const auto& note : c.notes) std::cout << "         " << note << std::endl;
  if (!c.notes.empty()) ++failures;
}

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

// Edges of a rule as "from(pattern)->to(pattern)" over activities.
std::set<std::string> shape(const ComplianceRule& r) {
  std::set<std::string> out;
  for (const auto& e : r.edges) {
    const auto& a = r.node(e.from);
    const auto& b = r.node(e.to);
    out.insert(a.activity + "(" + to_string(a.pattern) + ")->" + b.activity + "(" +
               to_string(b.pattern) + ")");
  }
  return out;
}

bool language_equivalent(const std::vector<ComplianceRule>& a, const std::vector<ComplianceRule>& b) {
  std::vector<EventLabel> alphabet;
  for (const auto* side : {&a, &b})
    for (const auto& r : *side) {
      auto l = r.labels();
      alphabet.insert(alphabet.end(), l.begin(), l.end());
    }
  alphabet = normalize_alphabet(alphabet);
  auto la = conjunction_automaton(a, alphabet);
  auto lb = conjunction_automaton(b, alphabet);
  return is_empty(intersect(la, complement(lb))).empty && is_empty(intersect(lb, complement(la))).empty;
}

}  // namespace

namespace {

void criterion1(Check& c) {
  auto chor = load_fixture("running_example.json");
  auto gcr = load_fixture_rule("C3");
  auto d = decompose(gcr, chor);
  c.expect(d.status == DecompositionStatus::transitive, "status " + to_string(d.status));
  c.expect(partners_of(d) == std::vector<std::string>{"SpecialCarrier", "Middleman"},
           "unexpected partners");
  for (const auto& a : d.assertions) {
    if (a.partner == "Middleman") {
      c.expect(shape(a.rule) == std::set<std::string>{"get_permission_of_authority(cons_occ)->"
                                                      "order_special_transport(ante_occ)"},
               "Middleman assertion differs");
    } else {
      c.expect(shape(a.rule) ==
                   std::set<std::string>{
                       "order_special_transport(cons_occ)->safety_check(cons_occ)",
                       "safety_check(cons_occ)->transport_intermediate(ante_occ)"},
               "Special Carrier assertion differs");
    }
  }
  c.expect(verify_decomposition(d.rules(), gcr).ok(), "assertions do not imply C3");
}

void example(Check& c, const std::string& tpl, const std::string& fixture_name,
             const std::string& rule, const std::vector<std::string>& partners,
             const std::set<std::string>& messages) {
  auto start = Clock::now();
  auto ds = apply_theorem_template(tpl, load_fixture_rule(rule), load_fixture(fixture_name));
  if (ds.empty()) {
    c.expect(false, rule + ": no instance of " + tpl);
    return;
  }
  auto got = partners_of(ds.front());
  auto want = partners;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  c.expect(got == want, rule + ": partners differ");
  c.expect(messages_in(ds.front()) == messages, rule + ": interactions differ");
  c.expect(seconds_since(start) < 5, rule + " exceeded 5 s");
}

void criterion2(Check& c) {
  example(c, "T1a", "running_example.json", "ex1", {"Middleman", "SpecialCarrier"},
          {"order_special_transport"});
  example(c, "Cor1", "running_example.json", "ex2", {"Manufacturer", "Middleman", "Supplier"},
          {"order_intermediate", "fwd_order_intermediate"});
  example(c, "T3", "running_example.json", "ex6",
          {"Middleman", "Supplier", "SpecialCarrier", "Manufacturer"},
          {"fwd_order_intermediate", "waybill_for_intermediate", "arrival_of_intermediate"});
  example(c, "T5", "running_example.json", "ex7", {"Middleman", "SpecialCarrier", "Supplier"},
          {"order_intermediate", "fwd_order_intermediate", "order_special_transport",
           "waybill_for_intermediate"});
  example(c, "T6", "adapted_ex8.json", "ex8",
          {"Supplier", "SpecialCarrier", "SpecialCarrier", "Middleman"},
          {"request_details", "production_status", "transport_details", "waybill_for_intermediate",
           "transport_confirmation"});
  example(c, "T7", "adapted_ex8.json", "ex9", {"Supplier", "SpecialCarrier", "Middleman"},
          {"production_status", "transport_details", "transport_confirmation"});

  auto ex3 = decompose_with(load_fixture_rule("ex3"), load_fixture("running_example_ex3.json"));
  c.expect(ex3.status == DecompositionStatus::required_sync, "ex3 is " + to_string(ex3.status));

  auto ex4 = decompose_with(load_fixture_rule("ex4"), load_fixture("example4.json"));
  Trace combined{"act:SpecialCarrier.transport_intermediate",
                 "msg:order_special_transport!Manufacturer",
                 "msg:order_special_transport?SpecialCarrier",
                 "act:Manufacturer.quick_test_intermediate"};
  bool flagged = false;
  for (const auto& a : ex4.assertions)
    if (a.partner == "SpecialCarrier") flagged = !evaluate_rule(combined, a.rule);
  c.expect(flagged, "ex4 combined trace not flagged by the Special Carrier assertion");
  c.expect(!evaluate_rule(combined, load_fixture_rule("ex4")), "ex4 combined trace satisfies the GCR");
}

void criterion3(Check& c) {
  TheoremOptions o;
  o.max_len = 7;
  for (auto id : {"T1a", "T1b", "Cor1", "T2a", "T2b", "T3", "T5", "T7", "T8"}) {
    auto r = validate_theorem(id, o);
    c.expect(r.holds, std::string(id) + " has a counterexample");
  }
  o.max_len = 8;
  for (auto id : {"T4(2,2)", "T6"}) {
    auto r = validate_theorem(id, o);
    c.expect(r.holds, std::string(id) + " has a counterexample up to length 8");
  }
  TheoremOptions conv;
  conv.max_len = 7;
  conv.converse = true;
  auto r = validate_theorem("T1a", conv);
  c.expect(!r.holds && r.counterexample && *r.counterexample == Trace{"A", "C"},
           "converse of T1a does not fail on [A, C]");
}

void criterion4(Check& c) {
  std::vector<ComplianceRule> corpus;
  for (const auto& id : template_ids()) {
    auto tpl = theorem_template(id);
    corpus.push_back(tpl.conclusion);
    for (const auto& p : tpl.premises) corpus.push_back(p.rule);
    if (tpl.converse) corpus.push_back(*tpl.converse);
  }
  corpus.push_back(make_rule("resp", {{"A", AO}, {"B", CO}}, {{"A", "B"}}));
  corpus.push_back(make_rule("prec", {{"B", CO}, {"A", AO}}, {{"B", "A"}}));
  corpus.push_back(make_rule("abs_after", {{"A", AO}, {"B", CA}}, {{"A", "B"}}));
  corpus.push_back(make_rule("abs_before", {{"B", CA}, {"A", AO}}, {{"B", "A"}}));
  corpus.push_back(make_rule("ante_abs", {{"A", AO}, {"X", AA}, {"B", AO}, {"C", CO}},
                             {{"A", "X", ANTE}, {"X", "B", ANTE}, {"B", "C"}}));
  std::set<Pattern> patterns;
  std::size_t used = 0, mismatches = 0;
  for (const auto& rule : corpus) {
    auto alphabet = rule.labels();
    if (alphabet.size() > 5) continue;
    if (alphabet.size() < 5) alphabet.push_back("Z");
    alphabet = normalize_alphabet(alphabet);
    ++used;
    for (const auto& n : rule.nodes) patterns.insert(n.pattern);
    auto aut = rule_to_automaton(rule, alphabet);
    Trace word;
    std::function<void()> rec = [&] {
      if (aut.accepts(word) != evaluate_rule(word, rule)) ++mismatches;
      if (word.size() == 6) return;
      for (const auto& l : alphabet) {
        word.push_back(l);
        rec();
        word.pop_back();
      }
    };
    rec();
  }
  std::cout << "         corpus: " << used << " rules" << std::endl;
  c.expect(used >= 20, "corpus has only " + std::to_string(used) + " rules");
  c.expect(patterns.size() == 4, "corpus misses a pattern");
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
}

void criterion5(Check& c) {
  int failed = 0, transitive = 0, sync = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorParams p;
    p.partners = 2 + static_cast<int>(seed % 3);
    p.messages = 3 + static_cast<int>(seed % 4);
    p.plant_chain = seed % 3 != 0;
    auto gen = generate_case(p, seed);
    auto d = decompose_with(*gen.planted, gen.chor);
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    if (d.status == DecompositionStatus::failed) {
      ++failed;
      continue;
    }
    d.status == DecompositionStatus::transitive ? ++transitive : ++sync;
    c.expect(verify_decomposition(d.rules(), *gen.planted).ok(), tag + "assertions do not imply the rule");
    const Choreography& models = d.choreography ? *d.choreography : gen.chor;
    if (d.choreography) {
      c.expect(check_consistency(models).ok() && check_compatibility(models).ok(),
               tag + "updated choreography is not sound");
    }
    for (const auto& a : d.assertions) {
      c.expect(check_local_compliance(models.private_model(a.partner), a.partner, a.rule).ok(),
               tag + a.partner + " does not satisfy " + a.rule.id);
    }
  }
  std::cout << "         sweep: " << transitive << " transitive, " << sync << " with sync, " << failed
            << " failed" << std::endl;
}

void criterion6(Check& c) {
  auto chor = load_fixture("running_example.json");
  auto timed = [&](const char* what, const std::function<Outcome()>& f, Outcome want) {
    auto start = Clock::now();
    auto got = f();
    c.expect(got == want, std::string(what) + " is " + to_string(got));
    c.expect(seconds_since(start) < 1, std::string(what) + " exceeded 1 s");
  };
  timed("local C1", [&] {
    return check_local_compliance(chor.private_model("Manufacturer"), "Manufacturer",
                                  load_fixture_rule("C1")).outcome;
  }, Outcome::correct);
  timed("global C2", [&] {
    return check_global_compliance(chor, load_fixture_rule("C2"), GlobalMode::public_models).outcome;
  }, Outcome::correct);
  timed("choreography C3", [&] {
    return check_global_compliance(chor, load_fixture_rule("C3"), GlobalMode::choreography).outcome;
  }, Outcome::inapplicable);
}

void criterion7(Check& c) {
  GeneratorParams p;
  p.partners = 4;
  p.activities = 12;
  p.messages = 8;
  p.plant_rule = false;
  const std::vector<int> sizes{5, 10, 20, 40};
  std::vector<double> xs, ys;
  std::ostringstream counts;
  for (int n : sizes) {
    double total = 0;
    int runs = 0;
    for (std::uint64_t seed : {42u, 43u, 44u}) {
      auto chor = generate_random_choreography(p, seed);
      auto rule = random_tree_rule(chor, n, seed);
      auto d = decompose(rule, chor);
      total += static_cast<double>(d.ops.total());
      ++runs;
    }
    double mean = total / runs;
    counts << " n=" << n << ":" << static_cast<long long>(mean);
    xs.push_back(std::log(n));
    ys.push_back(std::log(mean));
  }
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  std::cout << "         operations" << counts.str() << ", log-log slope " << slope << std::endl;
  c.expect(slope <= 4.3, "slope " + std::to_string(slope) + " exceeds 4.3");
}

void criterion8(Check& c) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"running_example.json", "C1"}, {"running_example.json", "C2"},
      {"running_example.json", "C3"}, {"running_example.json", "ex1"},
      {"running_example.json", "ex2"}, {"running_example.json", "ex6"},
      {"running_example.json", "ex7"}, {"running_example_ex3.json", "ex3"},
      {"example4.json", "ex4"}, {"adapted_ex8.json", "ex8"},
      {"adapted_ex8.json", "ex9"}, {"manufacturing.json", "mfg_c1"}};
  for (const auto& [fixture_name, rule_name] : cases) {
    auto chor = load_fixture(fixture_name);
    auto gcr = load_fixture_rule(rule_name);
    auto central = decompose_with(gcr, chor);
    for (auto s : {Strategy::leader, Strategy::leaderless}) {
      const std::string tag = rule_name + " (" + to_string(s) + "): ";
      auto a = run_negotiation(chor, gcr, 7, s);
      auto b = run_negotiation(chor, gcr, 7, s);
      c.expect(a.decomposition.status == central.status, tag + "status differs");
      c.expect(a.decomposition.sync_messages == central.sync_messages, tag + "sync messages differ");
      c.expect(language_equivalent(a.decomposition.rules(), central.rules()),
               tag + "assertions are not language-equivalent");
      c.expect(a.transcript == b.transcript, tag + "transcript is not deterministic");
      auto replayed = replay_transcript(transcript_from_jsonl(transcript_to_jsonl(a.transcript)));
      c.expect(decomposition_to_json(replayed) == decomposition_to_json(a.decomposition),
               tag + "replay differs");
    }
  }
}

}  // namespace

int main() {
  criterion(1, "running example C3 decomposition", 1, criterion1);
  criterion(2, "worked examples on the fixtures", 40, criterion2);
  criterion(3, "theorem brute force", 300, criterion3);
  criterion(4, "oracle and automata agree", 120, criterion4);
  criterion(5, "decomposition soundness sweep", 300, criterion5);
  criterion(6, "local and global checks", 3, criterion6);
  criterion(7, "operation count growth", 600, criterion7);
  criterion(8, "negotiation equivalence", 600, criterion8);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
