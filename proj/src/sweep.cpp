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

#include "comply/sweep.hpp"

#include <limits>

#include "comply/errors.hpp"

#ifdef COMPLY_HAVE_OPENMP
#include <omp.h>
#endif

namespace comply {

namespace {

std::uint64_t power(std::size_t k, std::size_t len) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < len; ++i) {
    if (k != 0 && n > std::numeric_limits<std::uint64_t>::max() / k)
      throw ResourceError("trace sweep too large");
    n *= k;
  }
  return n;
}

// Word number `index` of length `len`; the first letter is most significant
// so numeric order is lexicographic order.
void decode(std::uint64_t index, std::size_t k, std::vector<Letter>& word) {
  for (std::size_t i = word.size(); i-- > 0;) {
    word[i] = static_cast<Letter>(index % k);
    index /= k;
  }
}

}  // namespace

std::uint64_t sweep_size(std::size_t k, std::size_t max_len) {
  std::uint64_t total = 0;
  for (std::size_t len = 0; len <= max_len; ++len) total += power(k, len);
  return total;
}

int sweep_threads() {
#ifdef COMPLY_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::optional<std::vector<Letter>> find_first_serial(std::size_t k, std::size_t max_len,
                                                     const WordPredicate& pred) {
  std::vector<Letter> word;
  for (std::size_t len = 0; len <= max_len; ++len) {
    word.assign(len, 0);
    const std::uint64_t n = power(k, len);
    for (std::uint64_t i = 0; i < n; ++i) {
      decode(i, k, word);
      if (pred(word)) return word;
    }
  }
  return std::nullopt;
}

// Each length layer is split across threads; the smallest matching index in
// the layer wins, which keeps the answer identical to the serial kernel.
std::optional<std::vector<Letter>> find_first_parallel(std::size_t k, std::size_t max_len,
                                                       const WordPredicate& pred) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    const std::int64_t n = static_cast<std::int64_t>(power(k, len));
    std::int64_t best = n;
#pragma omp parallel
    {
      std::vector<Letter> word(len);
#pragma omp for schedule(dynamic, 4096) reduction(min : best)
      for (std::int64_t i = 0; i < n; ++i) {
        if (i >= best) continue;
        decode(static_cast<std::uint64_t>(i), k, word);
        if (pred(word)) best = i;
      }
    }
    if (best < n) {
      std::vector<Letter> word(len);
      decode(static_cast<std::uint64_t>(best), k, word);
      return word;
    }
  }
  return std::nullopt;
}

std::uint64_t count_serial(std::size_t k, std::size_t max_len, const WordPredicate& pred) {
  std::uint64_t hits = 0;
  std::vector<Letter> word;
  for (std::size_t len = 0; len <= max_len; ++len) {
    word.assign(len, 0);
    const std::uint64_t n = power(k, len);
    for (std::uint64_t i = 0; i < n; ++i) {
      decode(i, k, word);
      if (pred(word)) ++hits;
    }
  }
  return hits;
}

std::uint64_t count_parallel(std::size_t k, std::size_t max_len, const WordPredicate& pred) {
  std::uint64_t hits = 0;
  for (std::size_t len = 0; len <= max_len; ++len) {
    const std::int64_t n = static_cast<std::int64_t>(power(k, len));
#pragma omp parallel
    {
      std::vector<Letter> word(len);
#pragma omp for schedule(static) reduction(+ : hits)
      for (std::int64_t i = 0; i < n; ++i) {
        decode(static_cast<std::uint64_t>(i), k, word);
        if (pred(word)) ++hits;
      }
    }
  }
  return hits;
}

}  // namespace comply
