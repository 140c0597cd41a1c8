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

#include "spider/baseline/baseline.hpp"

#include <queue>
#include <random>
#include <unordered_map>

namespace spider {

namespace {

enum EvKind : int {
  kEvLinkDown = 0,
  kEvLinkUp = 1,
  kEvNodeDown = 2,
  kEvNodeUp = 3,
  kEvInstall = 4,
  kEvArrival = 5,
  kEvGen = 6,
};

struct Ev {
  TimeNs t = 0;
  int kind = 0;
  uint64_t order = 0;
  uint32_t a = 0;
  PortId port = 0;
  Packet pkt;
};

struct EvCmp {
  bool operator()(const Ev& x, const Ev& y) const {
    if (x.t != y.t) return x.t > y.t;
    if (x.kind != y.kind) return x.kind > y.kind;
    return x.order > y.order;
  }
};

class BaselineSim {
 public:
  BaselineSim(const Scenario& sc, const std::vector<PathPlan>& plans,
              const RunOptions& opts)
      : sc_(sc), plans_(plans), opts_(opts) {}

  RunResult run();

 private:
  void push(Ev ev) {
    ev.order = order_++;
    queue_.push(std::move(ev));
  }
  void log_line(const std::string& s) {
    if (opts_.collect_log) {
      log_ += s;
      log_ += '\n';
    }
  }
  std::string node_name(NodeId n) const { return sc_.topo.node(n).name; }

  void install_route(size_t di, const Path& path);
  void detect_and_notify(TimeNs now);
  void forward(NodeId n, const Packet& pkt, TimeNs now);
  void drop_lost(const Packet& pkt, TimeNs now, const char* reason);

  const Scenario& sc_;
  const std::vector<PathPlan>& plans_;
  RunOptions opts_;

  std::priority_queue<Ev, std::vector<Ev>, EvCmp> queue_;
  uint64_t order_ = 0;

  std::vector<bool> link_up_, node_up_;
  // next-hop port per (node, demand); kEdgePort delivers
  std::vector<std::unordered_map<uint32_t, PortId>> routes_;
  std::vector<TimeNs> phase_;

  Metrics metrics_;
  int64_t alive_data_ = 0;
  std::string log_;
  bool notified_ = false;
};

void BaselineSim::install_route(size_t di, const Path& path) {
  for (size_t j = 0; j + 1 < path.nodes.size(); ++j) {
    routes_[path.nodes[j]][static_cast<uint32_t>(di)] =
        sc_.topo.port_at(path.links[j], path.nodes[j]);
  }
  routes_[path.nodes.back()][static_cast<uint32_t>(di)] = kEdgePort;
}

void BaselineSim::detect_and_notify(TimeNs now) {
  if (notified_) return;
  notified_ = true;
  metrics_.ctrl_msgs++;
  log_line("t=" + format_time(now) + " ctrl notify");
  // Affected demands in demand order; installs complete sequentially,
  // ingress last, so a demand recovers only when fully installed.
  const BaselineParams& bp = sc_.baseline;
  uint32_t idx = 0;
  for (size_t di = 0; di < plans_.size(); ++di) {
    bool affected = false;
    for (const FaultSpec& f : sc_.faults) {
      if (f.kind == FaultSpec::Kind::LINK) {
        for (LinkId l : plans_[di].primary.links)
          if (l == f.link) affected = true;
      } else {
        for (NodeId n : plans_[di].primary.nodes)
          if (n == f.node) affected = true;
      }
    }
    if (!affected) continue;
    if (plans_[di].backup.empty()) continue;
    ++idx;
    Ev ev;
    ev.t = now + bp.rtt + bp.proc_delay + idx * bp.per_flow_install;
    ev.kind = kEvInstall;
    ev.a = static_cast<uint32_t>(di);
    push(ev);
  }
}

void BaselineSim::drop_lost(const Packet& pkt, TimeNs now,
                            const char* reason) {
  for (size_t i = 0; i < sc_.demands.size(); ++i) {
    if (sc_.demands[i].demand.src == pkt.eth_src &&
        sc_.demands[i].demand.dst == pkt.eth_dst) {
      metrics_.demands[i].lost++;
      alive_data_--;
      break;
    }
  }
  log_line("t=" + format_time(now) + " drop reason=" + reason +
           " seq=" + std::to_string(pkt.seq));
}

void BaselineSim::forward(NodeId n, const Packet& pkt, TimeNs now) {
  if (!node_up_[n]) {
    drop_lost(pkt, now, "node_down");
    return;
  }
  uint32_t di = 0;
  bool found = false;
  for (size_t i = 0; i < sc_.demands.size(); ++i) {
    if (sc_.demands[i].demand.src == pkt.eth_src &&
        sc_.demands[i].demand.dst == pkt.eth_dst) {
      di = static_cast<uint32_t>(i);
      found = true;
      break;
    }
  }
  auto it = found ? routes_[n].find(di) : routes_[n].end();
  if (it == routes_[n].end()) {
    drop_lost(pkt, now, "no_route");
    return;
  }
  PortId port = it->second;
  if (port == kEdgePort) {
    DemandMetrics& m = metrics_.demands[di];
    m.delivered++;
    alive_data_--;
    if (pkt.seq < m.max_seq_seen)
      m.out_of_order++;
    else
      m.max_seq_seen = pkt.seq;
    if (metrics_.first_failure != kNoTimeout &&
        m.recovery_time == kNoTimeout && now > metrics_.first_failure)
      m.recovery_time = now - metrics_.first_failure;
    log_line("t=" + format_time(now) + " deliver n=" + node_name(n) +
             " seq=" + std::to_string(pkt.seq));
    return;
  }
  LinkId l = sc_.topo.link_of_port(n, port);
  if (!link_up_[l]) {
    // Local port-down detection; the report leaves immediately.
    detect_and_notify(now);
    drop_lost(pkt, now, "link_down");
    return;
  }
  Ev ev;
  ev.t = now + sc_.topo.link(l).delay;
  ev.kind = kEvArrival;
  ev.a = sc_.topo.peer(l, n);
  ev.pkt = pkt;
  push(ev);
}

RunResult BaselineSim::run() {
  const Topology& topo = sc_.topo;
  link_up_.assign(topo.link_count(), true);
  node_up_.assign(topo.node_count(), true);
  routes_.assign(topo.node_count(), {});
  metrics_.demands.assign(sc_.demands.size(), {});
  for (size_t di = 0; di < plans_.size(); ++di)
    install_route(di, plans_[di].primary);

  std::mt19937_64 rng(mix64(sc_.seed));
  phase_.assign(sc_.demands.size(), 0);
  for (size_t i = 0; i < sc_.demands.size(); ++i) {
    if (sc_.random_phase && sc_.demands[i].profile.rate > 0) {
      std::uniform_real_distribution<double> u(
          0.0, 1.0 / sc_.demands[i].profile.rate);
      phase_[i] = from_sec(u(rng));
    }
  }

  for (const FaultSpec& f : sc_.faults) {
    Ev ev;
    ev.t = f.at;
    ev.kind = f.kind == FaultSpec::Kind::LINK ? kEvLinkDown : kEvNodeDown;
    ev.a = f.kind == FaultSpec::Kind::LINK ? f.link : f.node;
    push(ev);
    if (f.repair != kNoTimeout) {
      Ev up;
      up.t = f.repair;
      up.kind = f.kind == FaultSpec::Kind::LINK ? kEvLinkUp : kEvNodeUp;
      up.a = ev.a;
      push(up);
    }
  }

  for (size_t i = 0; i < sc_.demands.size(); ++i) {
    TimeNs t0 = sc_.demands[i].profile.tick_time(0, phase_[i]);
    if (t0 == kNoTimeout || t0 > sc_.duration) continue;
    Ev ev;
    ev.t = t0;
    ev.kind = kEvGen;
    ev.a = static_cast<uint32_t>(i);
    ev.pkt.seq = 0;
    push(ev);
  }

  while (!queue_.empty()) {
    Ev ev = queue_.top();
    queue_.pop();
    if (ev.t > sc_.duration) break;
    switch (ev.kind) {
      case kEvLinkDown:
        if (metrics_.first_failure == kNoTimeout)
          metrics_.first_failure = ev.t;
        link_up_[ev.a] = false;
        log_line("t=" + format_time(ev.t) + " link_down");
        break;
      case kEvLinkUp:
        link_up_[ev.a] = true;
        break;
      case kEvNodeDown:
        if (metrics_.first_failure == kNoTimeout)
          metrics_.first_failure = ev.t;
        node_up_[ev.a] = false;
        for (LinkId l : topo.links_at(ev.a)) link_up_[l] = false;
        log_line("t=" + format_time(ev.t) + " node_down");
        break;
      case kEvNodeUp:
        node_up_[ev.a] = true;
        for (LinkId l : topo.links_at(ev.a)) {
          if (node_up_[topo.peer(l, ev.a)]) link_up_[l] = true;
        }
        break;
      case kEvInstall: {
        metrics_.ctrl_msgs++;
        install_route(ev.a, plans_[ev.a].backup);
        log_line("t=" + format_time(ev.t) + " ctrl install d=" +
                 std::to_string(ev.a));
        break;
      }
      case kEvArrival:
        forward(ev.a, ev.pkt, ev.t);
        break;
      case kEvGen: {
        uint32_t di = ev.a;
        uint64_t k = ev.pkt.seq;
        const DemandSpec& ds = sc_.demands[di];
        Packet pkt;
        pkt.eth_src = ds.demand.src;
        pkt.eth_dst = ds.demand.dst;
        pkt.seq = k + 1;
        pkt.created_at = ev.t;
        metrics_.demands[di].sent++;
        alive_data_++;
        forward(ds.demand.src, pkt, ev.t);
        TimeNs next = ds.profile.tick_time(k + 1, phase_[di]);
        if (next != kNoTimeout && next <= sc_.duration) {
          Ev g;
          g.t = next;
          g.kind = kEvGen;
          g.a = di;
          g.pkt.seq = k + 1;
          push(g);
        }
        break;
      }
    }
  }

  metrics_.in_flight = alive_data_;
  RunResult res;
  res.metrics = std::move(metrics_);
  res.event_log = std::move(log_);
  return res;
}

}  // namespace

RunResult run_baseline(const Scenario& sc, const RunOptions& opts) {
  sc.validate();
  std::vector<Demand> demands;
  for (const DemandSpec& d : sc.demands) demands.push_back(d.demand);
  std::vector<PathPlan> plans =
      plan_all(sc.topo, demands, ProtectionScheme::END_TO_END, sc.tie,
               sc.allow_unprotected, /*parallel=*/false);
  BaselineSim sim(sc, plans, opts);
  return sim.run();
}

}  // namespace spider
