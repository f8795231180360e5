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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "comply/rule.hpp"
#include "comply/templates.hpp"

namespace comply {

struct TheoremOptions {
  /// Letters to enumerate over; empty means the template's own letters.
  std::vector<std::string> alphabet;
  std::size_t max_len = 7;
  /// Check "conclusion implies converse" instead of "premises imply conclusion".
  bool converse = false;
  bool parallel = true;
};

struct TheoremResult {
  std::string id;
  bool holds = true;
  std::optional<Trace> counterexample;
  std::vector<std::string> alphabet;
  std::size_t max_len = 0;
  std::uint64_t words = 0;
  double wall_ms = 0.0;
};

/// Exhaustively searches all traces up to `max_len` for one that satisfies
/// every premise but violates the conclusion. The reported counterexample is
/// the shortest, then lexicographically least, in alphabet order. Throws
/// InputError when max_len exceeds 10.
TheoremResult validate_theorem(const TheoremTemplate& tpl, const TheoremOptions& options);
TheoremResult validate_theorem(std::string_view id, const TheoremOptions& options);

}  // namespace comply
