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

#include "spider/compiler/profile.hpp"
#include "spider/pathplan/plan.hpp"
#include "spider/pathplan/topology.hpp"

namespace spider {

struct TrafficProfile {
  enum class Kind : uint8_t { CBR, RAMP };

  Kind kind = Kind::CBR;
  double rate = 0;        // pkt/s; RAMP start rate
  double end_rate = 0;    // RAMP only
  TimeNs ramp_duration = 0;

  static TrafficProfile cbr(double r) { return {Kind::CBR, r, 0, 0}; }
  static TrafficProfile ramp(double r0, double r1, TimeNs dur) {
    return {Kind::RAMP, r0, r1, dur};
  }

  // Injection instant of the k-th packet (0-based), or kNoTimeout when the
  // profile emits no more. Exact per tick, no accumulated drift.
  TimeNs tick_time(uint64_t k, TimeNs phase) const;
};

struct DemandSpec {
  Demand demand;
  TrafficProfile profile;
};

struct FaultSpec {
  enum class Kind : uint8_t { LINK, NODE };

  Kind kind = Kind::LINK;
  LinkId link = 0;
  NodeId node = kNoNode;
  TimeNs at = 0;
  TimeNs repair = kNoTimeout;

  // When set, the fault arms on the first heartbeat reply received by
  // watch_node on watch_port past `at` and fires `offset` later; `repair`
  // is then relative to the failure instant. This pins the failure to a
  // known phase of the detection cycle.
  bool after_reply = false;
  NodeId watch_node = kNoNode;
  PortId watch_port = 0;
  TimeNs offset = 0;

  static FaultSpec link_at(LinkId l, TimeNs at, TimeNs repair = kNoTimeout) {
    FaultSpec f;
    f.kind = Kind::LINK;
    f.link = l;
    f.at = at;
    f.repair = repair;
    return f;
  }
  static FaultSpec node_at(NodeId n, TimeNs at, TimeNs repair = kNoTimeout) {
    FaultSpec f;
    f.kind = Kind::NODE;
    f.node = n;
    f.at = at;
    f.repair = repair;
    return f;
  }
};

enum class Mode : uint8_t { SPIDER, BASELINE };

struct BaselineParams {
  TimeNs rtt = 0;                    // switch-controller round trip
  TimeNs proc_delay = ms(20);        // detection report and rule computation
  TimeNs per_flow_install = us(1160);  // sequential flow-mod cost per demand
};

struct Scenario {
  Topology topo;
  std::vector<DemandSpec> demands;
  TimeoutProfile timeouts;
  std::vector<FaultSpec> faults;
  Mode mode = Mode::SPIDER;
  BaselineParams baseline;
  uint64_t seed = 1;
  TimeNs duration = sec(1);
  bool allow_unprotected = false;
  bool random_phase = false;  // seed-derived generator phases
  TieBreak tie = TieBreak::SPREAD;

  void validate() const;
};

}  // namespace spider
