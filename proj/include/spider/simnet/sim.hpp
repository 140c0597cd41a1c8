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

#include <string>
#include <unordered_map>
#include <vector>

#include "spider/compiler/compile.hpp"
#include "spider/simnet/metrics.hpp"
#include "spider/simnet/scenario.hpp"

namespace spider {

struct RunOptions {
  bool collect_log = false;
  bool collect_bins = false;
  bool collect_trails = false;
};

struct RunResult {
  Metrics metrics;
  std::string event_log;
  // Node sequence of each delivered packet, keyed by demand index and
  // sequence number; only filled on request.
  std::unordered_map<uint64_t, std::vector<NodeId>> trails;

  static uint64_t trail_key(size_t demand_idx, uint64_t seq) {
    return (static_cast<uint64_t>(demand_idx) << 44) | seq;
  }
};

// Deterministic discrete-event run of a compiled network. Identical
// (scenario, seed) inputs produce byte-identical event logs.
RunResult run_spider(const CompiledNetwork& net, const Scenario& sc,
                     const RunOptions& opts = {});

// Plans, compiles and runs in one go, honoring sc.mode.
RunResult run(const Scenario& sc, const RunOptions& opts = {});

}  // namespace spider
