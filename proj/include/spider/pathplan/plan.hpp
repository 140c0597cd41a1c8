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

#include <optional>
#include <vector>

#include "spider/pathplan/topology.hpp"

namespace spider {

struct Demand {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  double rate = 0;  // packets per second

  DemandKey key() const { return {src, dst}; }
};

struct Path {
  std::vector<NodeId> nodes;  // src..dst
  std::vector<LinkId> links;  // one per hop

  size_t hops() const { return links.size(); }
  bool empty() const { return nodes.empty(); }
  TimeNs total_delay(const Topology& t) const;
  // Propagation delay from src up to nodes[idx].
  TimeNs prefix_delay(const Topology& t, size_t idx) const;
  std::optional<size_t> index_of(NodeId n) const;
};

// Raised when a demand cannot be protected for some failure states: no
// path from src to dst avoids the primary interior.
struct UnprotectableDemand : ValidationError {
  UnprotectableDemand(const Demand& d, std::vector<NodeId> faults,
                      const Topology& t);
  Demand demand;
  std::vector<NodeId> fault_nodes;
};

enum class ProtectionScheme : uint8_t { END_TO_END };

// Deterministic choice among equal-length shortest paths.
//   LEX     - lexicographically smallest node-id sequence.
//   SPREAD  - hash-ranked next hops; spreads equal-cost load over the
//             lattice instead of hugging low node ids.
enum class TieBreak : uint8_t { LEX, SPREAD };

// One demand's routing material: hop-count shortest primary and, for
// end-to-end protection, a single backup disjoint from the primary
// interior, reused for every fault state with the ingress as reroute node.
struct PathPlan {
  Demand demand;
  Path primary;
  Path backup;
  // Fault states along the primary: every node except the source. A
  // failure of the last node is indistinguishable from a last-link failure
  // and uses the same backup, which enters the destination by a different
  // link than the primary.
  std::vector<NodeId> fault_nodes;
  NodeId reroute_node = kNoNode;

  const Path& backup_for(NodeId) const { return backup; }
};

std::vector<Demand> full_mesh_demands(const Topology& t, double rate);

PathPlan plan_paths(const Topology& t, const Demand& d,
                    ProtectionScheme scheme = ProtectionScheme::END_TO_END,
                    TieBreak tie = TieBreak::SPREAD);

std::vector<PathPlan> plan_all(const Topology& t,
                               const std::vector<Demand>& demands,
                               ProtectionScheme scheme,
                               TieBreak tie,
                               bool allow_unprotected = false,
                               bool parallel = true);

// Hop distance oracle (plain breadth-first search).
std::vector<int> bfs_distances(const Topology& t, NodeId from);

}  // namespace spider
