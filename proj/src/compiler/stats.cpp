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

#include "spider/compiler/stats.hpp"

#include <algorithm>

namespace spider {

GridStats grid_closed_forms(int n) {
  GridStats s;
  s.n = n;
  s.edge_nodes = 4ull * (n - 1);
  s.core_nodes = static_cast<uint64_t>(n - 2) * (n - 2);
  s.demands = s.edge_nodes * (s.edge_nodes - 1);
  s.e2n = s.edge_nodes * s.edge_nodes * static_cast<uint64_t>(n) * n;
  return s;
}

GridStats grid_stats(int n, TieBreak tie, bool parallel, EntryPolicy policy) {
  GridStats s = grid_closed_forms(n);
  Topology topo = grid_topology(n);
  std::vector<Demand> demands = full_mesh_demands(topo, 100.0);
  std::vector<PathPlan> plans = plan_all(topo, demands,
                                         ProtectionScheme::END_TO_END, tie,
                                         /*allow_unprotected=*/false, parallel);
  CompiledNetwork net = compile(std::move(topo), std::move(plans),
                                TimeoutProfile{}, parallel, policy);

  uint64_t total = 0;
  uint64_t mn = ~0ull, mx = 0;
  for (const SwitchConfig& cfg : net.configs) {
    uint64_t e = cfg.total_entries();
    total += e;
    mn = std::min(mn, e);
    mx = std::max(mx, e);
  }
  s.min_entries = mn;
  s.max_entries = mx;
  s.avg_entries =
      (total + net.configs.size() / 2) / net.configs.size();  // rounded
  return s;
}

}  // namespace spider
