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

#include <vector>

#include "spider/simnet/sim.hpp"

namespace spider {

// ---- canned experiment scenarios ----

// Two edge nodes joined by a primary and a parallel backup link, one-way
// constant-rate traffic. The failure arms on a heartbeat reply at the
// sender and fires a chosen fraction of one heartbeat period later.
Scenario two_node_scenario(double rate, TimeNs delta6, TimeNs delta7,
                           TimeNs warm, TimeNs fail_offset);

// Same two nodes, bidirectional: a constant reverse feed plus a decreasing
// forward profile whose direction is the measured one.
Scenario overhead_scenario(TimeNs delta6, double ramp_start, double ramp_end,
                           TimeNs ramp_duration, double reverse_rate);

// Four-hop chain with a longer disjoint backup; a mid-chain node failure
// exercises remote failover through bounced packets.
Scenario chain_scenario(double rate, TimeNs fail_at, TimeNs repair_at,
                        uint64_t seed);
NodeId chain_fault_node(const Scenario& sc);

// Fan-in topology where up to 35 demands share one core link and the
// switch ahead of it has no local detour. `demands` picks the first M
// source/sink pairs.
Scenario compare_scenario(int demands, Mode mode, TimeNs rtt, TimeNs fail_at,
                          uint64_t seed);

// ---- sweep drivers (OpenMP fan-out with a serial reference mode) ----

struct LossCell {
  TimeNs delta6 = 0;
  TimeNs delta7 = 0;
  double mean_lost = 0;
  std::vector<uint64_t> per_try;
};

std::vector<LossCell> loss_sweep(const std::vector<TimeNs>& delta6s,
                                 const std::vector<TimeNs>& delta7s,
                                 double rate, int tries, uint64_t seed,
                                 bool parallel = true);

struct OverheadPoint {
  int second = 0;
  uint64_t data = 0;
  uint64_t hb_reply = 0;
  uint64_t total = 0;
};

// Per-second rates seen by the measured direction of the two-node link.
std::vector<OverheadPoint> overhead_run(TimeNs delta6, TimeNs duration);

// Receiver-side inversion count of one run.
uint64_t reorder_check(const Scenario& sc);

struct ReorderResult {
  std::vector<uint64_t> per_seed;
  uint64_t total = 0;
  int seeds_with_reordering = 0;
};

// Randomized remote-failure suite; delta1 < 0 keeps the topology-derived
// flowlet hold, 0 disables it.
ReorderResult reorder_suite(TimeNs delta1, double rate, int seeds,
                            uint64_t seed0, bool parallel = true);

struct ComparePoint {
  int demands = 0;
  TimeNs rtt = 0;       // meaningless for the spider rows
  bool spider = false;
  double mean_lost = 0;
};

std::vector<ComparePoint> compare_sweep(int max_demands,
                                        const std::vector<TimeNs>& rtts,
                                        int tries, uint64_t seed,
                                        bool parallel = true);

}  // namespace spider
