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

#include "comply/theorem.hpp"

#include <chrono>

#include "comply/errors.hpp"
#include "comply/sweep.hpp"

namespace comply {

TheoremResult validate_theorem(const TheoremTemplate& tpl, const TheoremOptions& options) {
  if (options.max_len > 10) throw InputError("max length is limited to 10");
  auto start = std::chrono::steady_clock::now();

  TheoremResult result;
  result.id = options.converse ? tpl.id + " converse" : tpl.id;
  result.alphabet = options.alphabet.empty() ? tpl.letters() : options.alphabet;
  result.max_len = options.max_len;
  const auto& alphabet = result.alphabet;
  if (alphabet.size() > 0xffff) throw InputError("alphabet too large");

  std::vector<RuleMatcher> hypotheses;
  std::vector<RuleMatcher> goals;
  if (!options.converse) {
    for (const auto& p : tpl.premises) hypotheses.emplace_back(p.rule, alphabet);
    goals.emplace_back(tpl.conclusion, alphabet);
  } else {
    hypotheses.emplace_back(tpl.conclusion, alphabet);
    if (tpl.converse) {
      goals.emplace_back(*tpl.converse, alphabet);
    } else {
      for (const auto& p : tpl.premises) goals.emplace_back(p.rule, alphabet);
    }
  }

  const bool loop_free = tpl.loop_free;
  const std::size_t k = alphabet.size();
  WordPredicate counterexample = [&](std::span<const Letter> w) {
    if (loop_free) {
      std::vector<bool> seen(k, false);
      for (Letter l : w) {
        if (seen[l]) return false;
        seen[l] = true;
      }
    }
    // Cheap side first: most words already satisfy the goal.
    bool goal = true;
    for (const auto& g : goals) {
      if (!g.holds(w)) {
        goal = false;
        break;
      }
    }
    if (goal) return false;
    for (const auto& h : hypotheses) {
      if (!h.holds(w)) return false;
    }
    return true;
  };

  auto found = options.parallel ? find_first_parallel(k, options.max_len, counterexample)
                                : find_first_serial(k, options.max_len, counterexample);
  result.words = sweep_size(k, options.max_len);
  if (found) {
    result.holds = false;
    Trace trace;
    for (Letter l : *found) trace.push_back(alphabet[l]);
    result.counterexample = std::move(trace);
  }
  result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

TheoremResult validate_theorem(std::string_view id, const TheoremOptions& options) {
  return validate_theorem(theorem_template(id), options);
}

}  // namespace comply
