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

#include "spider/compiler/compile.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <set>

namespace spider {

using namespace os;

void RfCoding::build(std::vector<NodeId> fault_nodes) {
  std::sort(fault_nodes.begin(), fault_nodes.end());
  fault_nodes.erase(std::unique(fault_nodes.begin(), fault_nodes.end()),
                    fault_nodes.end());
  faults_ = std::move(fault_nodes);
}

StateValue RfCoding::value(RfPhase phase, NodeId fault) const {
  auto it = std::lower_bound(faults_.begin(), faults_.end(), fault);
  if (it == faults_.end() || *it != fault)
    throw ConfigError("fault node not managed by this switch");
  size_t idx = static_cast<size_t>(it - faults_.begin());
  return static_cast<StateValue>(1 + 4 * idx + static_cast<size_t>(phase));
}

bool RfCoding::decode(StateValue v, RfPhase* phase, NodeId* fault) const {
  if (v == kRfNormal || v > 4 * faults_.size()) return false;
  size_t idx = (v - 1) / 4;
  if (phase) *phase = static_cast<RfPhase>((v - 1) % 4);
  if (fault) *fault = faults_[idx];
  return true;
}

namespace {

// Flow entry priorities, one band per entry family. Within a band the
// matches are pairwise disjoint; the bands keep the specific-over-generic
// ordering explicit.
enum Prio : int {
  kPrioPort = 100,        // table 0
  kPrioProbeSelf = 900,   // bounce probes addressed to this node
  kPrioHbReply = 850,
  kPrioHbReq = 800,
  kPrioProbeReturn = 700,  // reroute node consumes returning probes
  kPrioTransit = 600,      // probe transit
  kPrioFault = 500,        // fault-tagged transit / ingress / egress
  kPrioData = 400,
  kPrioFsm = 100,  // tables 2 and 3
  kPrioCatchAll = 0,
};

Action act(ActionPushTag a) { return {a}; }
Action act(ActionSetTag a) { return {a}; }
Action act(ActionPopTag a) { return {a}; }
Action act(ActionOutput a) { return {a}; }
Action act(ActionOutputInPort a) { return {a}; }
Action act(ActionSetMeta a) { return {a}; }
Action act(ActionSetState a) { return {a}; }
Action act(ActionGotoTable a) { return {a}; }
Action act(ActionDrop a) { return {a}; }
Action act(ActionDuplicate a) { return {a}; }

// Refresh of the local-failover state of the receiving port: any packet
// that shows up on a transport port proves the port up. Metadata still
// holds the input port when table 1 runs.
Action rx_refresh(const TimeoutProfile& prof) {
  ActionSetState s;
  s.table_id = 3;
  s.args.state = static_cast<StateValue>(LfState::UP_WAIT);
  s.args.hard_timeout = prof.delta6;
  s.args.hard_rollback = static_cast<StateValue>(LfState::UP_NEED_HB);
  return act(s);
}

struct NodeRoles {
  // (plan index, position of this node on the primary)
  std::vector<std::pair<size_t, size_t>> as_src;
  std::vector<std::pair<size_t, size_t>> as_interior;
  std::vector<size_t> as_dst;
  // (plan index, position of this node on the backup)
  std::vector<std::pair<size_t, size_t>> as_backup_interior;
};

struct Builder {
  const Topology& topo;
  const std::vector<PathPlan>& plans;
  const TimeoutProfile& prof;
  const std::vector<PlanTimings>& timings;
  const NodeRoles& roles;
  NodeId n;
  EntryPolicy policy;

  PortId up_port(const Path& p, size_t j) const {
    return topo.port_at(p.links[j - 1], p.nodes[j]);
  }
  PortId down_port(const Path& p, size_t j) const {
    return topo.port_at(p.links[j], p.nodes[j]);
  }

  SwitchConfig build() const;
  void build_table0(SwitchConfig& cfg) const;
  void build_table1(SwitchConfig& cfg) const;
  void build_table2(SwitchConfig& cfg) const;
  void build_table3(SwitchConfig& cfg) const;
};

void Builder::build_table0(SwitchConfig& cfg) const {
  FlowTable t0;
  if (topo.node(n).role == NodeRole::EDGE) {
    FlowEntry e;
    e.priority = kPrioPort;
    e.match.in_port = kEdgePort;
    e.actions = {act(ActionPushTag{Tag::data0()}), act(ActionGotoTable{1})};
    t0.add(std::move(e));
  }
  for (LinkId l : topo.links_at(n)) {
    PortId p = topo.port_at(l, n);
    FlowEntry e;
    e.priority = kPrioPort;
    e.match.in_port = p;
    e.actions = {act(ActionSetMeta{p}), act(ActionGotoTable{1})};
    t0.add(std::move(e));
  }
  cfg.pipeline.set_table(0, std::move(t0));
}

void Builder::build_table1(SwitchConfig& cfg) const {
  FlowTable t1;

  // Per-port machinery: probes addressed to this node bounce back through
  // their input port, heartbeat replies only feed the port state.
  for (LinkId l : topo.links_at(n)) {
    PortId p = topo.port_at(l, n);
    {
      FlowEntry e;
      e.priority = kPrioProbeSelf;
      e.match.tag = TagPattern::exact(Tag::probe(n));
      e.match.in_port = p;
      e.actions = {rx_refresh(prof), act(ActionOutputInPort{})};
      t1.add(std::move(e));
    }
    {
      FlowEntry e;
      e.priority = kPrioHbReply;
      e.match.tag = TagPattern::exact(Tag::hb_reply());
      e.match.in_port = p;
      e.actions = {rx_refresh(prof), act(ActionDrop{})};
      t1.add(std::move(e));
    }
  }

  // Ingress and reroute-node material.
  for (auto [pi, pos] : roles.as_src) {
    const PathPlan& plan = plans[pi];
    const DemandKey d = plan.demand.key();
    PortId out0 = down_port(plan.primary, 0);
    {
      FlowEntry e;
      e.priority = kPrioData;
      e.match.tag = TagPattern::exact(Tag::data0());
      e.match.in_port = kEdgePort;
      e.match.eth = d;
      e.actions = {act(ActionSetTag{Tag::data0()}), act(ActionSetMeta{out0}),
                   act(ActionGotoTable{2})};
      t1.add(std::move(e));
    }
    if (!plan.backup.empty()) {
      // Bounced packets: the reroute decision lives in table 2.
      if (policy.per_fault_reroute_goto) {
        for (NodeId fault : plan.fault_nodes) {
          FlowEntry e;
          e.priority = kPrioFault;
          e.match.tag = TagPattern::exact(Tag::fault(fault));
          e.match.in_port = out0;
          e.match.eth = d;
          e.actions = {rx_refresh(prof), act(ActionGotoTable{2})};
          t1.add(std::move(e));
        }
      } else {
        FlowEntry e;
        e.priority = kPrioFault;
        e.match.tag = TagPattern::any_fault();
        e.match.in_port = out0;
        e.match.eth = d;
        e.actions = {rx_refresh(prof), act(ActionGotoTable{2})};
        t1.add(std::move(e));
      }
      // Returning probes resolve the fault state of table 2.
      for (size_t m = 1; m < plan.primary.nodes.size(); ++m) {
        NodeId fault = plan.primary.nodes[m];
        FlowEntry pe;
        pe.priority = kPrioProbeReturn;
        pe.match.tag = TagPattern::exact(Tag::probe(fault));
        pe.match.in_port = out0;
        pe.match.eth = d;
        ActionSetState fr;
        fr.table_id = 2;
        fr.args.state = cfg.rf_coding.value(RfPhase::FAULT_RESOLVED, fault);
        fr.args.idle_timeout = timings[pi].delta3;
        fr.args.idle_rollback = kRfNormal;
        fr.args.hard_timeout = timings[pi].delta4;
        fr.args.hard_rollback = kRfNormal;
        pe.actions = {rx_refresh(prof), act(fr), act(ActionDrop{})};
        t1.add(std::move(pe));
      }
    }
  }

  // Transit material on the primary path.
  for (auto [pi, j] : roles.as_interior) {
    const PathPlan& plan = plans[pi];
    const DemandKey d = plan.demand.key();
    PortId up = up_port(plan.primary, j);
    PortId down = down_port(plan.primary, j);
    {
      FlowEntry e;
      e.priority = kPrioData;
      e.match.tag = TagPattern::exact(Tag::data0());
      e.match.in_port = up;
      e.match.eth = d;
      e.actions = {rx_refresh(prof), act(ActionSetMeta{down}),
                   act(ActionGotoTable{2})};
      t1.add(std::move(e));
    }
    {
      // A heartbeat request doubles as data: answer it backwards and let
      // the payload continue as a tag 0 packet.
      FlowEntry e;
      e.priority = kPrioHbReq;
      e.match.tag = TagPattern::exact(Tag::hb_req());
      e.match.in_port = up;
      e.match.eth = d;
      ActionDuplicate dup;
      dup.first = {act(ActionSetTag{Tag::hb_reply()}),
                   act(ActionOutputInPort{})};
      dup.second = {act(ActionSetTag{Tag::data0()}), act(ActionSetMeta{down}),
                    act(ActionGotoTable{2})};
      e.actions = {rx_refresh(prof), act(dup)};
      t1.add(std::move(e));
    }
    // Bounced packets ride the reverse primary towards the reroute node;
    // bounces for the fault at p[m] originate at p[m-1] and only cross
    // nodes before it.
    size_t k = plan.primary.nodes.size() - 1;
    if (policy.per_fault_bounce) {
      for (size_t m = j + 2; m <= k; ++m) {
        FlowEntry e;
        e.priority = kPrioFault;
        e.match.tag = TagPattern::exact(Tag::fault(plan.primary.nodes[m]));
        e.match.in_port = down;
        e.match.eth = d;
        e.actions = {rx_refresh(prof), act(ActionOutput{up})};
        t1.add(std::move(e));
      }
    } else if (j + 2 <= k) {
      FlowEntry e;
      e.priority = kPrioFault;
      e.match.tag = TagPattern::any_fault();
      e.match.in_port = down;
      e.match.eth = d;
      e.actions = {rx_refresh(prof), act(ActionOutput{up})};
      t1.add(std::move(e));
    }
    // Probes for the fault at p[m] cross this node in both directions
    // whenever it sits before m on the primary.
    if (policy.per_fault_probe_out) {
      for (size_t m = j + 1; m <= k; ++m) {
        FlowEntry e;
        e.priority = kPrioTransit;
        e.match.tag = TagPattern::exact(Tag::probe(plan.primary.nodes[m]));
        e.match.in_port = up;
        e.match.eth = d;
        e.actions = {rx_refresh(prof), act(ActionOutput{down})};
        t1.add(std::move(e));
      }
    } else {
      FlowEntry e;
      e.priority = kPrioTransit;
      e.match.tag = TagPattern::any_probe();
      e.match.in_port = up;
      e.match.eth = d;
      e.actions = {rx_refresh(prof), act(ActionOutput{down})};
      t1.add(std::move(e));
    }
    if (policy.per_fault_probe_return) {
      for (size_t m = j + 1; m <= k; ++m) {
        FlowEntry e;
        e.priority = kPrioTransit;
        e.match.tag = TagPattern::exact(Tag::probe(plan.primary.nodes[m]));
        e.match.in_port = down;
        e.match.eth = d;
        e.actions = {rx_refresh(prof), act(ActionOutput{up})};
        t1.add(std::move(e));
      }
    } else {
      FlowEntry e;
      e.priority = kPrioTransit;
      e.match.tag = TagPattern::any_probe();
      e.match.in_port = down;
      e.match.eth = d;
      e.actions = {rx_refresh(prof), act(ActionOutput{up})};
      t1.add(std::move(e));
    }
  }

  // Egress.
  for (size_t pi : roles.as_dst) {
    const PathPlan& plan = plans[pi];
    const DemandKey d = plan.demand.key();
    size_t k = plan.primary.nodes.size() - 1;
    PortId up = up_port(plan.primary, k);
    {
      FlowEntry e;
      e.priority = kPrioData;
      e.match.tag = TagPattern::exact(Tag::data0());
      e.match.in_port = up;
      e.match.eth = d;
      e.actions = {rx_refresh(prof), act(ActionPopTag{}),
                   act(ActionOutput{kEdgePort})};
      t1.add(std::move(e));
    }
    {
      FlowEntry e;
      e.priority = kPrioHbReq;
      e.match.tag = TagPattern::exact(Tag::hb_req());
      e.match.in_port = up;
      e.match.eth = d;
      ActionDuplicate dup;
      dup.first = {act(ActionSetTag{Tag::hb_reply()}),
                   act(ActionOutputInPort{})};
      dup.second = {act(ActionPopTag{}), act(ActionOutput{kEdgePort})};
      e.actions = {rx_refresh(prof), act(dup)};
      t1.add(std::move(e));
    }
    if (!plan.backup.empty()) {
      // Detoured packets enter by the backup's last link; the label pop of
      // the detour's last node and the egress pop collapse into one.
      size_t bk = plan.backup.nodes.size() - 1;
      PortId bup = up_port(plan.backup, bk);
      FlowEntry e;
      e.priority = kPrioFault;
      e.match.tag = TagPattern::any_fault();
      e.match.in_port = bup;
      e.match.eth = d;
      e.actions = {rx_refresh(prof), act(ActionPopTag{}),
                   act(ActionOutput{kEdgePort})};
      t1.add(std::move(e));
    }
  }

  // Detour transit on the backup path.
  for (auto [pi, j] : roles.as_backup_interior) {
    const PathPlan& plan = plans[pi];
    const DemandKey d = plan.demand.key();
    PortId bup = up_port(plan.backup, j);
    PortId bdown = down_port(plan.backup, j);
    if (policy.per_fault_backup) {
      for (NodeId fault : plan.fault_nodes) {
        FlowEntry e;
        e.priority = kPrioFault;
        e.match.tag = TagPattern::exact(Tag::fault(fault));
        e.match.in_port = bup;
        e.match.eth = d;
        e.actions = {rx_refresh(prof), act(ActionOutput{bdown})};
        t1.add(std::move(e));
      }
    } else {
      FlowEntry e;
      e.priority = kPrioFault;
      e.match.tag = TagPattern::any_fault();
      e.match.in_port = bup;
      e.match.eth = d;
      e.actions = {rx_refresh(prof), act(ActionOutput{bdown})};
      t1.add(std::move(e));
    }
  }

  {
    FlowEntry e;
    e.priority = kPrioCatchAll;
    e.actions = {act(ActionDrop{})};
    t1.add(std::move(e));
  }
  cfg.pipeline.set_table(1, std::move(t1));
}

void Builder::build_table2(SwitchConfig& cfg) const {
  FlowTable t2;
  for (auto [pi, pos] : roles.as_src) {
    const PathPlan& plan = plans[pi];
    if (plan.backup.empty()) continue;
    const DemandKey d = plan.demand.key();
    PortId prim = down_port(plan.primary, 0);
    PortId det = down_port(plan.backup, 0);
    for (size_t m = 1; m < plan.primary.nodes.size(); ++m) {
      NodeId fault = plan.primary.nodes[m];
      StateValue fs = cfg.rf_coding.value(RfPhase::FAULT_SIGNALED, fault);
      StateValue de = cfg.rf_coding.value(RfPhase::DETOUR_ENABLED, fault);
      StateValue np = cfg.rf_coding.value(RfPhase::NEED_PROBE, fault);
      StateValue fr = cfg.rf_coding.value(RfPhase::FAULT_RESOLVED, fault);
      TimeNs d1 = timings[pi].delta1[m - 1];
      TimeNs d2 = timings[pi].delta2[m - 1];

      auto entry = [&](StateValue st, TagPattern tag,
                       std::vector<Action> actions) {
        FlowEntry e;
        e.priority = kPrioFsm;
        e.match.state = st;
        e.match.tag = tag;
        e.match.eth = d;
        e.actions = std::move(actions);
        t2.add(std::move(e));
      };

      // Bounced fault signal: detour the packet and start the flowlet
      // hold. Both hold timers roll into NEED_PROBE, so the first packet
      // after the hold launches a probe and enables the detour.
      ActionSetState sig;
      sig.table_id = 2;
      sig.args = {fs, d1, d2, np, np};
      entry(kRfNormal, TagPattern::exact(Tag::fault(fault)),
            {act(sig), act(ActionOutput{det})});

      // Flowlet hold: source traffic stays on the primary, re-bounced
      // packets keep taking the detour.
      entry(fs, TagPattern::exact(Tag::data0()), {act(ActionOutput{prim})});
      entry(fs, TagPattern::exact(Tag::fault(fault)),
            {act(ActionOutput{det})});

      // Detour enabled: tag and divert. The probe timer runs untouched by
      // traffic, which keeps probing periodic.
      entry(de, TagPattern::exact(Tag::data0()),
            {act(ActionSetTag{Tag::fault(fault)}), act(ActionOutput{det})});
      entry(de, TagPattern::exact(Tag::fault(fault)),
            {act(ActionOutput{det})});

      // Probe due: duplicate the packet, probe the primary, re-arm.
      ActionSetState rearm;
      rearm.table_id = 2;
      rearm.args = {de, kNoTimeout, prof.delta5, 0, np};
      ActionDuplicate dup;
      dup.first = {act(ActionSetTag{Tag::probe(fault)}),
                   act(ActionOutput{prim})};
      dup.second = {act(ActionSetTag{Tag::fault(fault)}),
                    act(ActionOutput{det})};
      entry(np, TagPattern::exact(Tag::data0()), {act(rearm), act(dup)});

      // Fault resolved: hold the detour until the current burst ends.
      entry(fr, TagPattern::exact(Tag::data0()),
            {act(ActionSetTag{Tag::fault(fault)}), act(ActionOutput{det})});
    }
  }
  {
    FlowEntry e;
    e.priority = kPrioCatchAll;
    e.actions = {act(ActionGotoTable{3})};
    t2.add(std::move(e));
  }
  cfg.pipeline.set_table(2, std::move(t2));

  StateTable st(Scope{Field::ETH_SRC, Field::ETH_DST},
                Scope{Field::ETH_SRC, Field::ETH_DST}, kRfNormal);
  cfg.pipeline.attach_state_table(2, std::move(st));
}

void Builder::build_table3(SwitchConfig& cfg) const {
  FlowTable t3;

  // Demands forwarded by this node, with their output port and the
  // alternative used when that port is declared down.
  struct Fwd {
    size_t plan = 0;
    PortId out = 0;
    bool bounce = false;  // else use the local detour port
    PortId detour = 0;
  };
  std::vector<Fwd> fwd;
  for (auto [pi, pos] : roles.as_src) {
    Fwd f;
    f.plan = pi;
    f.out = down_port(plans[pi].primary, 0);
    if (plans[pi].backup.empty()) {
      f.bounce = false;
      f.detour = kEdgePort;  // unprotected: nowhere to go
    } else {
      f.bounce = false;
      f.detour = down_port(plans[pi].backup, 0);
    }
    fwd.push_back(f);
  }
  for (auto [pi, j] : roles.as_interior) {
    Fwd f;
    f.plan = pi;
    f.out = down_port(plans[pi].primary, j);
    f.bounce = true;
    fwd.push_back(f);
  }
  cfg.fwd_demands = fwd.size();

  for (LinkId l : topo.links_at(n)) {
    PortId p = topo.port_at(l, n);
    NodeId neighbor = topo.peer(l, n);

    auto entry = [&](LfState st, std::optional<DemandKey> eth,
                     std::vector<Action> actions) {
      FlowEntry e;
      // demand-specific entries outrank the shared per-port divert
      e.priority = eth ? kPrioFsm + 10 : kPrioFsm;
      e.match.state = static_cast<StateValue>(st);
      e.match.metadata = p;
      e.match.eth = eth;
      e.actions = std::move(actions);
      t3.add(std::move(e));
    };

    // Port believed up. The first packet of a silent period turns into a
    // heartbeat request; the reply deadline rolls the port down.
    ActionSetState req;
    req.table_id = 3;
    req.args = {static_cast<StateValue>(LfState::UP_HB_REQUESTED), kNoTimeout,
                prof.delta7, 0,
                static_cast<StateValue>(LfState::DOWN_NEED_PROBE)};
    entry(LfState::UP_NEED_HB, std::nullopt,
          {act(req), act(ActionSetTag{Tag::hb_req()}), act(ActionOutput{p})});
    entry(LfState::UP_HB_REQUESTED, std::nullopt, {act(ActionOutput{p})});
    entry(LfState::UP_WAIT, std::nullopt, {act(ActionOutput{p})});

    // Port down: divert each demand to its alternative port and keep
    // probing the dead neighbor.
    ActionSetState wait;
    wait.table_id = 3;
    wait.args = {static_cast<StateValue>(LfState::DOWN_WAIT), kNoTimeout,
                 prof.delta5, 0,
                 static_cast<StateValue>(LfState::DOWN_NEED_PROBE)};
    bool shared_emitted = false;
    for (const Fwd& f : fwd) {
      if (!policy.down_pairs_all_ports && f.out != p) continue;
      bool reachable = f.out == p;
      bool shared = policy.down_pairs_shared_bounce && f.bounce;
      if (shared && (!reachable || shared_emitted)) continue;
      if (shared) shared_emitted = true;

      const DemandKey d = plans[f.plan].demand.key();
      std::vector<Action> divert;
      if (reachable) {
        divert.push_back(act(ActionSetTag{Tag::fault(neighbor)}));
        if (f.bounce)
          divert.push_back(act(ActionOutputInPort{}));
        else if (f.detour != kEdgePort)
          divert.push_back(act(ActionOutput{f.detour}));
        else
          divert.push_back(act(ActionDrop{}));
      } else {
        // Unreachable: the demand never carries this port in metadata.
        divert.push_back(act(ActionDrop{}));
      }

      std::optional<DemandKey> eth;
      if (!shared) eth = d;
      cfg.down_pair_units++;
      if (reachable) {
        ActionDuplicate dup;
        dup.first = {act(ActionSetTag{Tag::probe(neighbor)}),
                     act(ActionOutput{p})};
        dup.second = divert;
        entry(LfState::DOWN_NEED_PROBE, eth, {act(wait), act(dup)});
      } else {
        entry(LfState::DOWN_NEED_PROBE, eth, divert);
      }
      entry(LfState::DOWN_WAIT, eth, divert);
    }
  }

  {
    FlowEntry e;
    e.priority = kPrioCatchAll;
    e.actions = {act(ActionDrop{})};
    t3.add(std::move(e));
  }
  cfg.pipeline.set_table(3, std::move(t3));

  StateTable st(Scope{Field::METADATA}, Scope{Field::METADATA},
                static_cast<StateValue>(LfState::UP_NEED_HB));
  cfg.pipeline.attach_state_table(3, std::move(st));
}

SwitchConfig Builder::build() const {
  SwitchConfig cfg;
  cfg.node = n;
  cfg.policy = policy;

  std::vector<NodeId> faults;
  for (auto [pi, pos] : roles.as_src) {
    if (plans[pi].backup.empty()) continue;
    cfg.rf_demands += 1;
    cfg.rf_pairs += plans[pi].fault_nodes.size();
    faults.insert(faults.end(), plans[pi].fault_nodes.begin(),
                  plans[pi].fault_nodes.end());
  }
  cfg.rf_coding.build(std::move(faults));

  std::map<PortId, PortRole> ports;
  if (topo.node(n).role == NodeRole::EDGE)
    ports[kEdgePort] = PortRole::EDGE;
  for (LinkId l : topo.links_at(n))
    ports[topo.port_at(l, n)] = PortRole::TRANSPORT;
  cfg.pipeline.set_ports(std::move(ports));
  cfg.transport_ports = topo.transport_port_count(n);
  cfg.total_ports = topo.total_port_count(n);

  build_table0(cfg);
  build_table1(cfg);
  build_table2(cfg);
  build_table3(cfg);

  for (int t = 0; t < kNumTables; ++t)
    cfg.entry_counts[t] = cfg.pipeline.table(t).size();
  cfg.pipeline.check();
  return cfg;
}

}  // namespace

CompiledNetwork compile(Topology topo, std::vector<PathPlan> plans,
                        TimeoutProfile profile, bool parallel,
                        EntryPolicy policy) {
  profile.validate();
  topo.validate();

  std::set<std::pair<NodeId, NodeId>> seen;
  for (const PathPlan& p : plans) {
    if (!seen.insert({p.demand.src, p.demand.dst}).second)
      throw ValidationError("duplicate demand between " +
                            topo.node(p.demand.src).name + " and " +
                            topo.node(p.demand.dst).name);
  }

  CompiledNetwork net;
  net.profile = profile;

  // Resolve auto timeouts against path delays.
  net.timings.resize(plans.size());
  for (size_t i = 0; i < plans.size(); ++i) {
    const PathPlan& plan = plans[i];
    PlanTimings tm;
    for (size_t m = 1; m < plan.primary.nodes.size(); ++m) {
      TimeNs d1 = profile.delta1 != kNoTimeout
                      ? profile.delta1
                      : 2 * plan.primary.prefix_delay(topo, m - 1);
      TimeNs d2 = profile.delta2 != kNoTimeout ? profile.delta2
                                               : std::max(2 * d1, us(1));
      if (d2 <= d1) d2 = d1 + us(1);
      tm.delta1.push_back(d1);
      tm.delta2.push_back(d2);
    }
    TimeNs diff = plan.backup.empty()
                      ? 0
                      : plan.backup.total_delay(topo) -
                            plan.primary.total_delay(topo);
    tm.delta3 = profile.delta3 != kNoTimeout ? profile.delta3
                                             : std::max(diff, us(100));
    tm.delta4 = profile.delta4 != kNoTimeout ? profile.delta4
                                             : std::max(2 * tm.delta3, us(1));
    if (tm.delta4 <= tm.delta3) tm.delta4 = tm.delta3 + us(1);
    net.timings[i] = std::move(tm);
  }

  // Bucket the per-node roles once; entry generation then runs per node.
  std::vector<NodeRoles> roles(topo.node_count());
  for (size_t pi = 0; pi < plans.size(); ++pi) {
    const Path& prim = plans[pi].primary;
    roles[prim.nodes.front()].as_src.push_back({pi, 0});
    for (size_t j = 1; j + 1 < prim.nodes.size(); ++j)
      roles[prim.nodes[j]].as_interior.push_back({pi, j});
    roles[prim.nodes.back()].as_dst.push_back(pi);
    const Path& back = plans[pi].backup;
    for (size_t j = 1; j + 1 < back.nodes.size(); ++j)
      roles[back.nodes[j]].as_backup_interior.push_back({pi, j});
  }

  net.configs.resize(topo.node_count());
  std::vector<std::string> errors(topo.node_count());
  auto build_one = [&](size_t ni) {
    try {
      Builder b{topo, plans, profile, net.timings, roles[ni],
                static_cast<NodeId>(ni), policy};
      net.configs[ni] = b.build();
    } catch (const std::exception& e) {
      errors[ni] = e.what();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (size_t ni = 0; ni < topo.node_count(); ++ni) build_one(ni);
  } else {
    for (size_t ni = 0; ni < topo.node_count(); ++ni) build_one(ni);
  }
  for (const std::string& e : errors)
    if (!e.empty()) throw ConfigError(e);

  net.topo = std::move(topo);
  net.plans = std::move(plans);
  return net;
}

EntryCounts count_entries(const SwitchConfig& cfg) {
  EntryCounts c;
  c.per_table = cfg.entry_counts;
  c.total = cfg.total_entries();
  c.expected_table2 = 7 * cfg.rf_pairs;
  c.expected_table3 =
      cfg.transport_ports * 3 + 2 * static_cast<uint64_t>(cfg.down_pair_units);
  // Catch-alls of tables 2 and 3 sit outside the closed forms.
  c.formulas_hold = (c.per_table[2] == c.expected_table2 + 1) &&
                    (c.per_table[3] == c.expected_table3 + 1);
  return c;
}

void dump_config(const Topology& topo, const SwitchConfig& cfg,
                 std::ostream& os) {
  os << "# node " << topo.node(cfg.node).name << "\n";
  for (int t = 0; t < kNumTables; ++t) {
    os << "table " << t << "\n";
    for (const FlowEntry& e : cfg.pipeline.table(t).entries())
      os << "  " << to_string(e) << "\n";
  }
}

void dump_config(const CompiledNetwork& net, std::ostream& os) {
  for (const SwitchConfig& cfg : net.configs) dump_config(net.topo, cfg, os);
}

}  // namespace spider
