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

#include "spider/pathplan/topology.hpp"

#include <queue>

namespace spider {

NodeId Topology::add_node(const std::string& name, NodeRole role) {
  if (find_node(name) != kNoNode)
    throw ValidationError("duplicate node name: " + name);
  nodes_.push_back({name, role});
  incident_.emplace_back();
  return static_cast<NodeId>(nodes_.size() - 1);
}

LinkId Topology::add_link(NodeId a, NodeId b, TimeNs delay) {
  if (a >= nodes_.size() || b >= nodes_.size())
    throw ValidationError("link references unknown node");
  if (a == b) throw ValidationError("self loops are not allowed");
  if (delay <= 0) throw ValidationError("link delay must be positive");
  Link l;
  l.a = a;
  l.b = b;
  l.delay = delay;
  // Port 0 is the host port of edge nodes; transport ports count from 1.
  l.port_at_a = static_cast<PortId>(incident_[a].size() + 1);
  l.port_at_b = static_cast<PortId>(incident_[b].size() + 1);
  links_.push_back(l);
  LinkId id = static_cast<LinkId>(links_.size() - 1);
  incident_[a].push_back(id);
  incident_[b].push_back(id);
  return id;
}

NodeId Topology::find_node(const std::string& name) const {
  for (NodeId i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].name == name) return i;
  return kNoNode;
}

NodeId Topology::peer(LinkId l, NodeId n) const {
  const Link& lk = links_[l];
  return lk.a == n ? lk.b : lk.a;
}

PortId Topology::port_at(LinkId l, NodeId n) const {
  const Link& lk = links_[l];
  return lk.a == n ? lk.port_at_a : lk.port_at_b;
}

PortId Topology::port_towards(NodeId n, NodeId neighbor) const {
  for (LinkId l : incident_[n])
    if (peer(l, n) == neighbor) return port_at(l, n);
  throw ValidationError("nodes are not adjacent: " + nodes_[n].name + ", " +
                        nodes_[neighbor].name);
}

LinkId Topology::link_of_port(NodeId n, PortId p) const {
  if (p == kEdgePort || p > incident_[n].size())
    throw ValidationError("no link behind port " + std::to_string(p));
  return incident_[n][p - 1];
}

NodeId Topology::neighbor_of_port(NodeId n, PortId p) const {
  return peer(link_of_port(n, p), n);
}

size_t Topology::total_port_count(NodeId n) const {
  return incident_[n].size() + (nodes_[n].role == NodeRole::EDGE ? 1 : 0);
}

void Topology::validate() const {
  if (nodes_.empty()) throw ValidationError("topology has no nodes");
  std::vector<bool> seen(nodes_.size(), false);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = true;
  size_t reached = 1;
  while (!q.empty()) {
    NodeId n = q.front();
    q.pop();
    for (LinkId l : incident_[n]) {
      NodeId m = peer(l, n);
      if (!seen[m]) {
        seen[m] = true;
        ++reached;
        q.push(m);
      }
    }
  }
  if (reached != nodes_.size())
    throw ValidationError("topology is not connected");
}

NodeId grid_node(int n, int row, int col) {
  return static_cast<NodeId>(row * n + col);
}

Topology grid_topology(int n, TimeNs link_delay) {
  if (n < 3)
    throw ValidationError("grid size must be at least 3");
  Topology t;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      bool outer = r == 0 || c == 0 || r == n - 1 || c == n - 1;
      t.add_node(std::to_string(r) + "." + std::to_string(c),
                 outer ? NodeRole::EDGE : NodeRole::CORE);
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c + 1 < n)
        t.add_link(grid_node(n, r, c), grid_node(n, r, c + 1), link_delay);
      if (r + 1 < n)
        t.add_link(grid_node(n, r, c), grid_node(n, r + 1, c), link_delay);
    }
  }
  return t;
}

}  // namespace spider
