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

#include "comply/verification.hpp"

#include <algorithm>
#include <chrono>

#include "comply/compose.hpp"
#include "comply/errors.hpp"
#include "comply/rule_automaton.hpp"

namespace comply {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// lhs ∩ ¬rule, filling sizes and the witness into `v`.
void check_inclusion(const FiniteAutomaton& lhs, const ComplianceRule& rule, Verdict& v) {
  auto rule_aut = rule_to_automaton(rule, lhs.alphabet());
  auto bad = intersect(lhs, complement(rule_aut));
  v.alphabet = lhs.alphabet();
  v.lhs_states = lhs.num_states();
  v.rule_states = rule_aut.num_states();
  v.product_states = bad.num_states();
  auto empty = is_empty(bad);
  if (empty.empty) {
    v.outcome = Outcome::correct;
  } else {
    v.outcome = Outcome::violated;
    v.witness = std::move(empty.witness);
  }
}

}  // namespace

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::correct: return "correct";
    case Outcome::violated: return "violated";
    case Outcome::inapplicable: return "inapplicable";
  }
  return "correct";
}

std::string to_string(GlobalMode mode) {
  switch (mode) {
    case GlobalMode::choreography: return "choreography";
    case GlobalMode::public_models: return "public";
    case GlobalMode::full_private: return "full-private";
  }
  return "choreography";
}

GlobalMode global_mode_from_string(std::string_view text) {
  if (text == "choreography") return GlobalMode::choreography;
  if (text == "public") return GlobalMode::public_models;
  if (text == "full-private" || text == "full_private") return GlobalMode::full_private;
  throw InputError("unknown global mode '" + std::string(text) + "'");
}

FiniteAutomaton conjunction_automaton(std::span<const ComplianceRule> rules,
                                      const std::vector<EventLabel>& alphabet) {
  FiniteAutomaton acc = universal_automaton(normalize_alphabet(alphabet));
  for (const auto& r : rules) acc = minimize(intersect(acc, rule_to_automaton(r, acc.alphabet())));
  return acc;
}

Verdict verify_decomposition(std::span<const ComplianceRule> assertions, const ComplianceRule& gcr,
                             std::optional<std::vector<EventLabel>> alphabet) {
  auto start = Clock::now();
  std::vector<EventLabel> labels;
  if (alphabet) {
    labels = normalize_alphabet(*alphabet);
  } else {
    labels = gcr.labels();
    for (const auto& a : assertions) {
      auto more = a.labels();
      labels.insert(labels.end(), more.begin(), more.end());
    }
    labels = normalize_alphabet(std::move(labels));
  }
  Verdict v;
  check_inclusion(conjunction_automaton(assertions, labels), gcr, v);
  v.wall_ms = elapsed_ms(start);
  return v;
}

Verdict check_local_compliance(const FiniteAutomaton& model, const ComplianceRule& rule) {
  auto start = Clock::now();
  Verdict v;
  check_inclusion(model, rule, v);
  v.wall_ms = elapsed_ms(start);
  return v;
}

Verdict check_local_compliance(const ProcessGraph& model, std::string_view partner,
                               const ComplianceRule& rule, InteractionMode mode) {
  return check_local_compliance(model_to_automaton(model, partner, mode), rule);
}

Verdict check_global_compliance(const Choreography& chor, const ComplianceRule& gcr,
                                GlobalMode mode, InteractionMode interaction, int channel_bound) {
  auto start = Clock::now();
  Verdict v;
  if (mode != GlobalMode::full_private) {
    std::vector<EventLabel> visible;
    if (mode == GlobalMode::public_models) visible = chor.alphabet(interaction, ModelView::public_models);
    for (const auto& node : gcr.nodes) {
      if (node.is_message()) continue;
      if (!std::binary_search(visible.begin(), visible.end(), node.canonical_label())) {
        v.outcome = Outcome::inapplicable;
        v.reason = "references private activities";
        v.wall_ms = elapsed_ms(start);
        return v;
      }
    }
  }
  ModelView view = mode == GlobalMode::full_private ? ModelView::private_models
                                                    : ModelView::public_models;
  auto global = compose_global(chor, interaction, channel_bound, view);
  check_inclusion(global, gcr, v);
  v.wall_ms = elapsed_ms(start);
  return v;
}

}  // namespace comply
