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

// Times the serial and OpenMP word-enumeration kernels on the theorem
// sweeps. Usage: bench_sweep [max_len] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "comply/sweep.hpp"
#include "comply/theorem.hpp"

using namespace comply;

namespace {

template <typename F>
double best_ms(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t max_len = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 7;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads: %d, max_len: %zu, best of %d\n\n", sweep_threads(), max_len, repeats);
  std::printf("%-10s %12s %12s %12s %8s\n", "kernel", "words", "serial ms", "parallel ms", "speedup");

  // Raw kernel: count words whose letter sum is even.
  auto even = [](std::span<const Letter> w) {
    unsigned s = 0;
    for (auto l : w) s += l;
    return s % 2 == 0;
  };
  std::uint64_t a = 0, b = 0;
  double s_ms = best_ms(repeats, [&] { a = count_serial(5, max_len, even); });
  double p_ms = best_ms(repeats, [&] { b = count_parallel(5, max_len, even); });
  if (a != b) {
    std::fprintf(stderr, "kernel mismatch: %llu vs %llu\n", static_cast<unsigned long long>(a),
                 static_cast<unsigned long long>(b));
    return 1;
  }
  std::printf("%-10s %12llu %12.1f %12.1f %8.2f\n", "count", static_cast<unsigned long long>(sweep_size(5, max_len)),
              s_ms, p_ms, s_ms / p_ms);

  for (auto id : {"T1a", "T2b", "T3", "T5", "T6"}) {
    TheoremOptions o;
    o.max_len = max_len;
    TheoremResult serial, parallel;
    o.parallel = false;
    s_ms = best_ms(repeats, [&] { serial = validate_theorem(id, o); });
    o.parallel = true;
    p_ms = best_ms(repeats, [&] { parallel = validate_theorem(id, o); });
    if (serial.holds != parallel.holds || serial.counterexample != parallel.counterexample) {
      std::fprintf(stderr, "%s: serial and parallel disagree\n", id);
      return 1;
    }
    std::printf("%-10s %12llu %12.1f %12.1f %8.2f\n", id, static_cast<unsigned long long>(serial.words),
                s_ms, p_ms, s_ms / p_ms);
  }
  return 0;
}
