/*
 * Copyright 2026 The spidernet authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Wall-clock comparison of the serial reference paths against the OpenMP
// fan-out: path planning plus compilation of a large grid and the
// two canned sweeps.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "spider/compiler/stats.hpp"
#include "spider/simnet/sweeps.hpp"

namespace {

double time_of(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.3fs %10.3fs %8.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
  using namespace spider;

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "openmp",
              "speedup");

  {
    double s = time_of([] { grid_stats(12, TieBreak::SPREAD, false); });
    double p = time_of([] { grid_stats(12, TieBreak::SPREAD, true); });
    row("grid-12 plan+compile", s, p);
  }
  {
    std::vector<TimeNs> d6s = {ms(32), ms(16), ms(8), ms(4), ms(2), ms(1)};
    std::vector<TimeNs> d7s = {ms(100), ms(50), ms(25), ms(10)};
    double s =
        time_of([&] { loss_sweep(d6s, d7s, 1000.0, 10, 7, false); });
    double p = time_of([&] { loss_sweep(d6s, d7s, 1000.0, 10, 7, true); });
    row("loss sweep 24x10", s, p);
  }
  {
    std::vector<TimeNs> rtts = {ms(0), ms(12)};
    double s = time_of([&] { compare_sweep(20, rtts, 3, 7, false); });
    double p = time_of([&] { compare_sweep(20, rtts, 3, 7, true); });
    row("compare sweep", s, p);
  }
  return 0;
}
