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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "comply/rule.hpp"

namespace comply {

/// Exhaustive sweeps over all words of length 0..max_len on `k` letters, in
/// order of length and then lexicographically. Predicates must be safe to
/// call concurrently.
using WordPredicate = std::function<bool(std::span<const Letter>)>;

/// Number of words the sweep visits; throws ResourceError on overflow.
std::uint64_t sweep_size(std::size_t k, std::size_t max_len);

/// First word (shortest, then least) satisfying `pred`.
std::optional<std::vector<Letter>> find_first_serial(std::size_t k, std::size_t max_len,
                                                     const WordPredicate& pred);
std::optional<std::vector<Letter>> find_first_parallel(std::size_t k, std::size_t max_len,
                                                       const WordPredicate& pred);

std::uint64_t count_serial(std::size_t k, std::size_t max_len, const WordPredicate& pred);
std::uint64_t count_parallel(std::size_t k, std::size_t max_len, const WordPredicate& pred);

/// Threads available to the parallel kernels (1 without OpenMP).
int sweep_threads();

}  // namespace comply
