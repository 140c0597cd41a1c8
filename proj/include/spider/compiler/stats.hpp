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

#pragma once

#include <cstdint>

#include "spider/compiler/compile.hpp"

namespace spider {

// Flow-entry budget of an n x n grid with a full mesh of edge demands
// under end-to-end protection. The closed-form columns only depend on n;
// min/avg/max come from the compiled switches.
struct GridStats {
  int n = 0;
  uint64_t demands = 0;       // E * (E - 1)
  uint64_t edge_nodes = 0;    // 4 * (n - 1)
  uint64_t core_nodes = 0;    // (n - 2)^2
  uint64_t min_entries = 0;
  uint64_t avg_entries = 0;   // rounded to nearest
  uint64_t max_entries = 0;
  uint64_t e2n = 0;           // E^2 * N
};

GridStats grid_stats(int n, TieBreak tie = TieBreak::SPREAD,
                     bool parallel = true, EntryPolicy policy = {});

// Closed forms alone (no compilation).
GridStats grid_closed_forms(int n);

}  // namespace spider
