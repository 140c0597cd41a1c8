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
#include <vector>

#include "spider/time.hpp"
#include "spider/types.hpp"

namespace spider {

enum class NodeRole : uint8_t { EDGE, CORE };

struct TopoNode {
  std::string name;
  NodeRole role = NodeRole::CORE;
};

// Undirected link. Parallel links between the same pair are allowed; each
// link owns one transport port at either end.
struct Link {
  NodeId a = kNoNode;
  NodeId b = kNoNode;
  TimeNs delay = 0;
  PortId port_at_a = 0;
  PortId port_at_b = 0;
};

class Topology {
 public:
  NodeId add_node(const std::string& name, NodeRole role);
  LinkId add_link(NodeId a, NodeId b, TimeNs delay);

  size_t node_count() const { return nodes_.size(); }
  size_t link_count() const { return links_.size(); }
  const TopoNode& node(NodeId n) const { return nodes_[n]; }
  const Link& link(LinkId l) const { return links_[l]; }
  const std::vector<Link>& links() const { return links_; }

  NodeId find_node(const std::string& name) const;  // kNoNode when absent

  // Links incident to a node, in insertion order.
  const std::vector<LinkId>& links_at(NodeId n) const { return incident_[n]; }

  NodeId peer(LinkId l, NodeId n) const;
  PortId port_at(LinkId l, NodeId n) const;
  // Transport port a node uses to reach a directly connected neighbor.
  // With parallel links, the first one wins; prefer link-based addressing.
  PortId port_towards(NodeId n, NodeId neighbor) const;
  // Link attached to a given transport port of a node.
  LinkId link_of_port(NodeId n, PortId p) const;
  // Neighbor behind a transport port.
  NodeId neighbor_of_port(NodeId n, PortId p) const;

  size_t transport_port_count(NodeId n) const { return incident_[n].size(); }
  // Transport ports plus the host port of edge nodes.
  size_t total_port_count(NodeId n) const;

  // Connectivity over all nodes; self loops and non-positive delays are
  // rejected at insertion.
  void validate() const;

 private:
  std::vector<TopoNode> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<LinkId>> incident_;
};

// n x n square lattice with 4-neighbor links. The outer ring is EDGE, the
// interior CORE. Node names are "r.c" by row and column.
Topology grid_topology(int n, TimeNs link_delay = us(250));

NodeId grid_node(int n, int row, int col);

}  // namespace spider
