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

#include <span>

#include "comply/automaton.hpp"
#include "comply/rule.hpp"

namespace comply {

/// Automaton accepting exactly the traces over `alphabet` on which the rule
/// holds. Labels of the alphabet that match no rule node are free letters;
/// rule nodes whose label is absent from the alphabet simply never match.
/// The result is minimal.
FiniteAutomaton rule_to_automaton(const ComplianceRule& rule, std::span<const EventLabel> alphabet);

}  // namespace comply
