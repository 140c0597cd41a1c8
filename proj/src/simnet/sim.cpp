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

#include "spider/simnet/sim.hpp"

#include <queue>
#include <random>
#include <sstream>

#include "spider/baseline/baseline.hpp"

namespace spider {

namespace {

enum EvKind : int {
  kEvLinkDown = 0,
  kEvLinkUp = 1,
  kEvNodeDown = 2,
  kEvNodeUp = 3,
  kEvTimer = 4,
  kEvArrival = 5,
  kEvGen = 6,
};

struct Ev {
  TimeNs t = 0;
  int kind = 0;
  uint64_t order = 0;  // insertion tiebreak
  uint32_t a = 0;      // link / node / demand index
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

class SpiderSim {
 public:
  SpiderSim(const CompiledNetwork& net, const Scenario& sc,
            const RunOptions& opts)
      : net_(net), sc_(sc), opts_(opts) {}

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

  std::string node_name(NodeId n) const { return net_.topo.node(n).name; }
  std::string link_name(LinkId l) const {
    const Link& lk = net_.topo.link(l);
    return node_name(lk.a) + "-" + node_name(lk.b);
  }

  int demand_index(const DemandKey& k) const {
    auto it = demand_idx_.find(k);
    return it == demand_idx_.end() ? -1 : it->second;
  }

  void schedule_fault(const FaultSpec& f, TimeNs at, TimeNs repair);
  void apply_link_state(LinkId l, bool up, TimeNs now);
  void inject(uint32_t di, uint64_t k, TimeNs now);
  void process_at_node(NodeId n, PortId in_port, const Packet& pkt,
                       TimeNs now);
  void offer(NodeId from, PortId port, const Packet& pkt, TimeNs now);
  void deliver(NodeId n, const Packet& pkt, TimeNs now);
  void drop_lost(const Packet& pkt, TimeNs now, const char* reason);
  void schedule_timer(NodeId n);
  void record_bin(LinkId l, int dir, const Packet& pkt, TimeNs now);

  const CompiledNetwork& net_;
  const Scenario& sc_;
  RunOptions opts_;

  std::priority_queue<Ev, std::vector<Ev>, EvCmp> queue_;
  uint64_t order_ = 0;

  std::vector<os::SwitchPipeline> pipes_;
  std::vector<bool> link_up_;
  std::vector<bool> node_up_;
  std::vector<TimeNs> timer_at_;
  std::vector<TimeNs> phase_;
  std::unordered_map<DemandKey, int, DemandKeyHash> demand_idx_;

  Metrics metrics_;
  int64_t alive_data_ = 0;
  std::string log_;
  std::unordered_map<uint64_t, std::vector<NodeId>> trails_;

  // pending after-reply trigger
  bool trigger_armed_ = false;
  size_t trigger_fault_ = 0;
};

void SpiderSim::schedule_fault(const FaultSpec& f, TimeNs at, TimeNs repair) {
  Ev ev;
  ev.t = at;
  ev.kind = f.kind == FaultSpec::Kind::LINK ? kEvLinkDown : kEvNodeDown;
  ev.a = f.kind == FaultSpec::Kind::LINK ? f.link : f.node;
  push(ev);
  if (repair != kNoTimeout) {
    Ev up;
    up.t = repair;
    up.kind = f.kind == FaultSpec::Kind::LINK ? kEvLinkUp : kEvNodeUp;
    up.a = ev.a;
    push(up);
  }
}

void SpiderSim::apply_link_state(LinkId l, bool up, TimeNs now) {
  link_up_[l] = up;
  log_line("t=" + format_time(now) + (up ? " link_up l=" : " link_down l=") +
           link_name(l));
}

void SpiderSim::record_bin(LinkId l, int dir, const Packet& pkt, TimeNs now) {
  if (!opts_.collect_bins) return;
  auto& bins = metrics_.link_bins[l][dir];
  size_t idx = static_cast<size_t>(now / sec(1));
  if (bins.size() <= idx) bins.resize(idx + 1);
  switch (pkt.tag.kind) {
    case Tag::Kind::HB_REQ: bins[idx].hb_req++; break;
    case Tag::Kind::HB_REPLY: bins[idx].hb_reply++; break;
    case Tag::Kind::PROBE: bins[idx].probe++; break;
    default: bins[idx].data++; break;
  }
}

void SpiderSim::inject(uint32_t di, uint64_t k, TimeNs now) {
  const DemandSpec& ds = sc_.demands[di];
  Packet pkt;
  pkt.eth_src = ds.demand.src;
  pkt.eth_dst = ds.demand.dst;
  pkt.tag = Tag::none();
  pkt.seq = k + 1;
  pkt.created_at = now;
  metrics_.demands[di].sent++;
  alive_data_++;
  log_line("t=" + format_time(now) + " gen d=" + node_name(ds.demand.src) +
           ">" + node_name(ds.demand.dst) + " seq=" + std::to_string(pkt.seq));
  process_at_node(ds.demand.src, kEdgePort, pkt, now);

  TimeNs next = ds.profile.tick_time(k + 1, phase_[di]);
  if (next != kNoTimeout && next <= sc_.duration) {
    Ev ev;
    ev.t = next;
    ev.kind = kEvGen;
    ev.a = di;
    ev.pkt.seq = k + 1;  // next tick index
    push(ev);
  }
}

void SpiderSim::deliver(NodeId n, const Packet& pkt, TimeNs now) {
  int di = demand_index(pkt.demand());
  if (di < 0 || pkt.eth_dst != n || !pkt.tag.is_data()) {
    drop_lost(pkt, now, "stray_delivery");
    return;
  }
  DemandMetrics& m = metrics_.demands[di];
  m.delivered++;
  alive_data_--;
  if (pkt.seq < m.max_seq_seen)
    m.out_of_order++;
  else
    m.max_seq_seen = pkt.seq;
  if (metrics_.first_failure != kNoTimeout && m.recovery_time == kNoTimeout &&
      now > metrics_.first_failure)
    m.recovery_time = now - metrics_.first_failure;
  if (opts_.collect_trails)
    trails_[RunResult::trail_key(di, pkt.seq)].push_back(n);
  log_line("t=" + format_time(now) + " deliver n=" + node_name(n) +
           " seq=" + std::to_string(pkt.seq) + " d=" +
           node_name(pkt.eth_src) + ">" + node_name(pkt.eth_dst));
}

void SpiderSim::drop_lost(const Packet& pkt, TimeNs now, const char* reason) {
  if (pkt.tag.is_data()) {
    int di = demand_index(pkt.demand());
    if (di >= 0) {
      metrics_.demands[di].lost++;
      alive_data_--;
    }
    log_line("t=" + format_time(now) + " drop reason=" + reason +
             " tag=" + to_string(pkt.tag) + " seq=" + std::to_string(pkt.seq) +
             " d=" + node_name(pkt.eth_src) + ">" + node_name(pkt.eth_dst));
  }
}

void SpiderSim::offer(NodeId from, PortId port, const Packet& pkt,
                      TimeNs now) {
  LinkId l = net_.topo.link_of_port(from, port);
  const Link& lk = net_.topo.link(l);
  int dir = lk.a == from ? 0 : 1;
  record_bin(l, dir, pkt, now);
  log_line("t=" + format_time(now) + " tx n=" + node_name(from) + " l=" +
           link_name(l) + " tag=" + to_string(pkt.tag) +
           " seq=" + std::to_string(pkt.seq));
  if (!link_up_[l]) {
    drop_lost(pkt, now, "link_down");
    return;
  }
  Ev ev;
  ev.t = now + lk.delay;
  ev.kind = kEvArrival;
  ev.a = lk.a == from ? lk.b : lk.a;
  ev.port = net_.topo.port_at(l, ev.a);
  ev.pkt = pkt;
  push(ev);
}

void SpiderSim::process_at_node(NodeId n, PortId in_port, const Packet& pkt,
                                TimeNs now) {
  if (!node_up_[n]) {
    drop_lost(pkt, now, "node_down");
    return;
  }
  if (opts_.collect_trails && pkt.tag.is_data()) {
    int di = demand_index(pkt.demand());
    if (di >= 0)
      trails_[RunResult::trail_key(di, pkt.seq)].push_back(n);
  }

  // A pinned-phase fault arms on the heartbeat reply closing a detection
  // cycle and fires a chosen fraction of one period later.
  if (trigger_armed_ && pkt.tag.kind == Tag::Kind::HB_REPLY) {
    const FaultSpec& f = sc_.faults[trigger_fault_];
    if (n == f.watch_node && in_port == f.watch_port && now >= f.at) {
      schedule_fault(f, now + f.offset,
                     f.repair == kNoTimeout ? kNoTimeout
                                            : now + f.offset + f.repair);
      trigger_armed_ = false;
      log_line("t=" + format_time(now) + " fault_armed");
    }
  }

  std::vector<os::Emission> emissions =
      pipes_[n].process_packet(pkt, in_port, now);
  for (const os::Emission& e : emissions) {
    if (e.port == kEdgePort)
      deliver(n, e.pkt, now);
    else
      offer(n, e.port, e.pkt, now);
  }
  schedule_timer(n);
}

void SpiderSim::schedule_timer(NodeId n) {
  auto dl = pipes_[n].next_deadline();
  if (!dl) return;
  if (timer_at_[n] != kNoTimeout && timer_at_[n] <= *dl) return;
  timer_at_[n] = *dl;
  Ev ev;
  ev.t = *dl;
  ev.kind = kEvTimer;
  ev.a = n;
  push(ev);
}

RunResult SpiderSim::run() {
  const Topology& topo = net_.topo;
  pipes_.clear();
  pipes_.reserve(net_.configs.size());
  for (const SwitchConfig& cfg : net_.configs) pipes_.push_back(cfg.pipeline);

  link_up_.assign(topo.link_count(), true);
  node_up_.assign(topo.node_count(), true);
  timer_at_.assign(topo.node_count(), kNoTimeout);
  metrics_.demands.assign(sc_.demands.size(), {});
  if (opts_.collect_bins)
    metrics_.link_bins.assign(topo.link_count(), {});

  std::mt19937_64 rng(mix64(sc_.seed));
  phase_.assign(sc_.demands.size(), 0);
  for (size_t i = 0; i < sc_.demands.size(); ++i) {
    demand_idx_[sc_.demands[i].demand.key()] = static_cast<int>(i);
    if (sc_.random_phase && sc_.demands[i].profile.rate > 0) {
      std::uniform_real_distribution<double> u(
          0.0, 1.0 / sc_.demands[i].profile.rate);
      phase_[i] = from_sec(u(rng));
    }
  }

  for (size_t fi = 0; fi < sc_.faults.size(); ++fi) {
    const FaultSpec& f = sc_.faults[fi];
    if (f.after_reply) {
      trigger_armed_ = true;
      trigger_fault_ = fi;
    } else {
      schedule_fault(f, f.at, f.repair);
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
      case kEvLinkUp: {
        if (metrics_.first_failure == kNoTimeout && ev.kind == kEvLinkDown)
          metrics_.first_failure = ev.t;
        apply_link_state(ev.a, ev.kind == kEvLinkUp, ev.t);
        break;
      }
      case kEvNodeDown: {
        if (metrics_.first_failure == kNoTimeout)
          metrics_.first_failure = ev.t;
        node_up_[ev.a] = false;
        log_line("t=" + format_time(ev.t) + " node_down n=" +
                 node_name(ev.a));
        for (LinkId l : topo.links_at(ev.a)) apply_link_state(l, false, ev.t);
        break;
      }
      case kEvNodeUp: {
        node_up_[ev.a] = true;
        log_line("t=" + format_time(ev.t) + " node_up n=" + node_name(ev.a));
        for (LinkId l : topo.links_at(ev.a)) {
          NodeId peer = topo.peer(l, ev.a);
          if (node_up_[peer]) apply_link_state(l, true, ev.t);
        }
        break;
      }
      case kEvTimer: {
        NodeId n = ev.a;
        timer_at_[n] = kNoTimeout;
        for (const os::StateTransition& tr : pipes_[n].expire_timeouts(ev.t)) {
          log_line("t=" + format_time(tr.deadline) + " state n=" +
                   node_name(n) + " table=" + std::to_string(tr.table_id) +
                   " key=" + os::to_string(tr.key) + " " +
                   std::to_string(tr.old_state) + "->" +
                   std::to_string(tr.new_state) +
                   (tr.cause == os::ExpiryCause::IDLE ? " cause=idle"
                                                      : " cause=hard"));
        }
        schedule_timer(n);
        break;
      }
      case kEvArrival: {
        log_line("t=" + format_time(ev.t) + " rx n=" + node_name(ev.a) +
                 " port=" + std::to_string(ev.port) + " tag=" +
                 to_string(ev.pkt.tag) + " seq=" + std::to_string(ev.pkt.seq));
        process_at_node(ev.a, ev.port, ev.pkt, ev.t);
        break;
      }
      case kEvGen: {
        inject(ev.a, ev.pkt.seq, ev.t);
        break;
      }
    }
  }

  metrics_.in_flight = alive_data_;
  RunResult res;
  res.metrics = std::move(metrics_);
  res.event_log = std::move(log_);
  res.trails = std::move(trails_);
  return res;
}

}  // namespace

RunResult run_spider(const CompiledNetwork& net, const Scenario& sc,
                     const RunOptions& opts) {
  sc.validate();
  SpiderSim sim(net, sc, opts);
  return sim.run();
}

RunResult run(const Scenario& sc, const RunOptions& opts) {
  sc.validate();
  if (sc.mode == Mode::BASELINE) return run_baseline(sc, opts);
  std::vector<Demand> demands;
  for (const DemandSpec& d : sc.demands) demands.push_back(d.demand);
  std::vector<PathPlan> plans =
      plan_all(sc.topo, demands, ProtectionScheme::END_TO_END, sc.tie,
               sc.allow_unprotected, /*parallel=*/false);
  CompiledNetwork net = compile(sc.topo, std::move(plans), sc.timeouts,
                                /*parallel=*/false);
  return run_spider(net, sc, opts);
}

}  // namespace spider
