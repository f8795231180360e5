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

#include "comply/automaton.hpp"
#include "comply/process.hpp"

namespace comply {

/// Global behaviour of a choreography. Atomic mode synchronizes sender and
/// receiver on the shared `msg:<name>` event; async mode interleaves send
/// and receive events, keeping every channel between 0 and `channel_bound`
/// pending messages.
FiniteAutomaton compose_global(const Choreography& chor, InteractionMode mode,
                               int channel_bound = 1,
                               ModelView view = ModelView::private_models);

}  // namespace comply
