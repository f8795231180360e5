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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "comply/automaton.hpp"
#include "comply/process.hpp"
#include "comply/rule.hpp"

namespace comply {

enum class Outcome { correct, violated, inapplicable };

std::string to_string(Outcome outcome);

/// Result of a language-inclusion check. `correct` reads as "compliant" for
/// model checks; `witness` is set when violated.
struct Verdict {
  Outcome outcome = Outcome::correct;
  Trace witness;
  std::string reason;
  std::vector<EventLabel> alphabet;
  std::size_t lhs_states = 0;     // model or assertion-conjunction automaton
  std::size_t rule_states = 0;    // automaton of the rule
  std::size_t product_states = 0; // lhs intersected with the negated rule
  double wall_ms = 0;

  bool ok() const { return outcome == Outcome::correct; }
};

/// Intersection of the rule automata over `alphabet`, minimized.
FiniteAutomaton conjunction_automaton(std::span<const ComplianceRule> rules,
                                      const std::vector<EventLabel>& alphabet);

/// Correct iff every trace satisfying all assertions satisfies the GCR. The
/// alphabet defaults to the labels mentioned by the GCR and the assertions.
Verdict verify_decomposition(std::span<const ComplianceRule> assertions, const ComplianceRule& gcr,
                             std::optional<std::vector<EventLabel>> alphabet = std::nullopt);

/// Compliant iff every complete run of `model` satisfies the rule.
Verdict check_local_compliance(const ProcessGraph& model, std::string_view partner,
                               const ComplianceRule& rule,
                               InteractionMode mode = InteractionMode::atomic);
/// Same check against a precompiled model automaton.
Verdict check_local_compliance(const FiniteAutomaton& model, const ComplianceRule& rule);

/// How much of a choreography a global check may look at. `choreography`
/// sees interactions only, `public_models` adds the public tasks, and
/// `full_private` composes every private model (omniscient; for testing).
enum class GlobalMode { choreography, public_models, full_private };

std::string to_string(GlobalMode mode);
GlobalMode global_mode_from_string(std::string_view text);

Verdict check_global_compliance(const Choreography& chor, const ComplianceRule& gcr,
                                GlobalMode mode, InteractionMode interaction = InteractionMode::atomic,
                                int channel_bound = 1);

}  // namespace comply
