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

#include "spider/pathplan/plan.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

namespace spider {

TimeNs Path::total_delay(const Topology& t) const {
  TimeNs d = 0;
  for (LinkId l : links) d += t.link(l).delay;
  return d;
}

TimeNs Path::prefix_delay(const Topology& t, size_t idx) const {
  TimeNs d = 0;
  for (size_t i = 0; i < idx && i < links.size(); ++i)
    d += t.link(links[i]).delay;
  return d;
}

std::optional<size_t> Path::index_of(NodeId n) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == n) return i;
  return std::nullopt;
}

UnprotectableDemand::UnprotectableDemand(const Demand& d,
                                         std::vector<NodeId> faults,
                                         const Topology& t)
    : ValidationError([&] {
        std::ostringstream os;
        os << "demand " << t.node(d.src).name << ">" << t.node(d.dst).name
           << " has no node-disjoint backup; unprotected fault states:";
        for (NodeId f : faults) os << " " << t.node(f).name;
        return os.str();
      }()),
      demand(d),
      fault_nodes(std::move(faults)) {}

std::vector<Demand> full_mesh_demands(const Topology& t, double rate) {
  std::vector<NodeId> edges;
  for (NodeId n = 0; n < t.node_count(); ++n)
    if (t.node(n).role == NodeRole::EDGE) edges.push_back(n);
  if (edges.size() < 2)
    throw ValidationError("full mesh needs at least two edge nodes");
  std::vector<Demand> out;
  out.reserve(edges.size() * (edges.size() - 1));
  for (NodeId s : edges)
    for (NodeId d : edges)
      if (s != d) out.push_back({s, d, rate});
  return out;
}

std::vector<int> bfs_distances(const Topology& t, NodeId from) {
  std::vector<int> dist(t.node_count(), -1);
  std::queue<NodeId> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    NodeId n = q.front();
    q.pop();
    for (LinkId l : t.links_at(n)) {
      NodeId m = t.peer(l, n);
      if (dist[m] < 0) {
        dist[m] = dist[n] + 1;
        q.push(m);
      }
    }
  }
  return dist;
}

namespace {

// Distances to dst on the residual graph with some nodes/links banned.
std::vector<int> bfs_to(const Topology& t, NodeId dst,
                        const std::vector<bool>* banned_node,
                        const std::vector<bool>* banned_link) {
  std::vector<int> dist(t.node_count(), -1);
  std::queue<NodeId> q;
  dist[dst] = 0;
  q.push(dst);
  while (!q.empty()) {
    NodeId n = q.front();
    q.pop();
    for (LinkId l : t.links_at(n)) {
      if (banned_link && (*banned_link)[l]) continue;
      NodeId m = t.peer(l, n);
      if (banned_node && (*banned_node)[m]) continue;
      if (dist[m] < 0) {
        dist[m] = dist[n] + 1;
        q.push(m);
      }
    }
  }
  return dist;
}

// Walks src->dst downhill on the distance field, picking the next hop per
// the tie-break policy.
Path walk(const Topology& t, NodeId src, NodeId dst,
          const std::vector<int>& dist_to_dst,
          const std::vector<bool>* banned_node,
          const std::vector<bool>* banned_link, TieBreak tie,
          uint64_t spread_key) {
  Path p;
  p.nodes.push_back(src);
  NodeId cur = src;
  int step = 0;
  while (cur != dst) {
    LinkId best_link = 0;
    NodeId best_peer = kNoNode;
    uint64_t best_rank = ~0ull;
    bool found = false;
    for (LinkId l : t.links_at(cur)) {
      if (banned_link && (*banned_link)[l]) continue;
      NodeId m = t.peer(l, cur);
      if (banned_node && (*banned_node)[m] && m != dst) continue;
      if (dist_to_dst[m] != dist_to_dst[cur] - 1) continue;
      uint64_t rank;
      if (tie == TieBreak::LEX) {
        rank = (uint64_t(m) << 32) | l;
      } else {
        rank = mix64(spread_key ^ (uint64_t(m) << 20) ^ (uint64_t(l) << 44) ^
                     uint64_t(step));
      }
      if (!found || rank < best_rank) {
        found = true;
        best_rank = rank;
        best_link = l;
        best_peer = m;
      }
    }
    if (!found)
      throw ValidationError("no downhill step during path walk");
    p.links.push_back(best_link);
    p.nodes.push_back(best_peer);
    cur = best_peer;
    ++step;
  }
  return p;
}

}  // namespace

namespace {

PathPlan plan_with_tie(const Topology& t, const Demand& d,
                       const std::vector<int>& dist, TieBreak tie,
                       bool* backup_found) {
  uint64_t key = mix64((uint64_t(d.src) << 32) | d.dst);
  PathPlan plan;
  plan.demand = d;
  plan.reroute_node = d.src;
  plan.primary = walk(t, d.src, d.dst, dist, nullptr, nullptr, tie, key);
  for (size_t i = 1; i < plan.primary.nodes.size(); ++i)
    plan.fault_nodes.push_back(plan.primary.nodes[i]);

  // The backup avoids every interior node of the primary and enters dst by
  // a different last link, so it detours any single fault state.
  std::vector<bool> banned_node(t.node_count(), false);
  for (size_t i = 1; i + 1 < plan.primary.nodes.size(); ++i)
    banned_node[plan.primary.nodes[i]] = true;
  std::vector<bool> banned_link(t.link_count(), false);
  for (LinkId l : plan.primary.links) banned_link[l] = true;

  std::vector<int> bdist = bfs_to(t, d.dst, &banned_node, &banned_link);
  if (bdist[d.src] < 0) {
    *backup_found = false;
    return plan;
  }
  *backup_found = true;
  plan.backup = walk(t, d.src, d.dst, bdist, &banned_node, &banned_link, tie,
                     mix64(key ^ 0x5b1ced42ull));
  return plan;
}

}  // namespace

PathPlan plan_paths(const Topology& t, const Demand& d,
                    ProtectionScheme scheme, TieBreak tie) {
  (void)scheme;  // END_TO_END is the only scheme
  if (d.src == d.dst) throw ValidationError("demand endpoints must differ");
  if (t.node(d.src).role != NodeRole::EDGE ||
      t.node(d.dst).role != NodeRole::EDGE)
    throw ValidationError("demand endpoints must be edge nodes");

  std::vector<int> dist = bfs_to(t, d.dst, nullptr, nullptr);
  if (dist[d.src] < 0) throw ValidationError("demand endpoints disconnected");

  bool ok = false;
  PathPlan plan = plan_with_tie(t, d, dist, tie, &ok);
  if (!ok && tie != TieBreak::LEX) {
    // A hash-spread primary can wall off the residual graph; the
    // boundary-hugging lexicographic walk usually leaves a detour open.
    plan = plan_with_tie(t, d, dist, TieBreak::LEX, &ok);
  }
  if (!ok) throw UnprotectableDemand(d, plan.fault_nodes, t);
  return plan;
}

std::vector<PathPlan> plan_all(const Topology& t,
                               const std::vector<Demand>& demands,
                               ProtectionScheme scheme, TieBreak tie,
                               bool allow_unprotected, bool parallel) {
  std::vector<PathPlan> plans(demands.size());
  std::vector<std::string> errors(demands.size());

  auto plan_one = [&](size_t i) {
    try {
      plans[i] = plan_paths(t, demands[i], scheme, tie);
    } catch (const UnprotectableDemand& e) {
      if (!allow_unprotected) {
        errors[i] = e.what();
        return;
      }
      PathPlan p;
      p.demand = demands[i];
      p.reroute_node = demands[i].src;
      std::vector<int> dist = bfs_to(t, demands[i].dst, nullptr, nullptr);
      uint64_t key = mix64((uint64_t(demands[i].src) << 32) | demands[i].dst);
      p.primary = walk(t, demands[i].src, demands[i].dst, dist, nullptr,
                       nullptr, tie, key);
      for (size_t j = 1; j < p.primary.nodes.size(); ++j)
        p.fault_nodes.push_back(p.primary.nodes[j]);
      plans[i] = p;  // backup stays empty
    }
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (size_t i = 0; i < demands.size(); ++i) plan_one(i);
  } else {
    for (size_t i = 0; i < demands.size(); ++i) plan_one(i);
  }

  for (const std::string& e : errors)
    if (!e.empty()) throw ValidationError(e);
  return plans;
}

}  // namespace spider
