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

#include <cstdint>
#include <optional>

#include "comply/process.hpp"
#include "comply/rule.hpp"

namespace comply {

struct GeneratorParams {
  int partners = 3;
  int activities = 3;  // tasks per partner
  int messages = 4;
  double xor_share = 0.2;
  double and_share = 0.1;
  double loop_share = 0.1;
  int loop_depth = 1;
  /// Plant a binary response rule between the first two partners.
  bool plant_rule = true;
  /// Connect the planted pair through a dedicated message.
  bool plant_chain = true;
};

struct GeneratedCase {
  Choreography chor;
  std::optional<ComplianceRule> planted;
};

/// Deterministic in the seed. Messages follow one global order at every
/// partner, so the composition never deadlocks. Throws InputError for
/// fewer than one partner or negative counts.
GeneratedCase generate_case(const GeneratorParams& params, std::uint64_t seed);
Choreography generate_random_choreography(const GeneratorParams& params, std::uint64_t seed);

/// A tree-shaped rule with one antecedence occurrence and `nodes - 1`
/// consequence occurrences over distinct tasks of the choreography.
ComplianceRule random_tree_rule(const Choreography& chor, int nodes, std::uint64_t seed);

}  // namespace comply
