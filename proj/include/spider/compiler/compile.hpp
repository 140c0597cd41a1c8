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

#include <array>
#include <ostream>
#include <vector>

#include "spider/compiler/profile.hpp"
#include "spider/openstate/pipeline.hpp"
#include "spider/pathplan/plan.hpp"
#include "spider/pathplan/topology.hpp"

namespace spider {

// Remote-failover phases inside one fault macro state. With the default
// NORMAL this packs the per-demand state space into 1 + 4 * (fault count)
// values per switch.
enum class RfPhase : uint8_t {
  FAULT_SIGNALED = 0,
  DETOUR_ENABLED = 1,  // aka detour ready
  NEED_PROBE = 2,
  FAULT_RESOLVED = 3,
};

inline constexpr StateValue kRfNormal = 0;

// Local-failover states, one per output port. UP_NEED_HB is the default:
// ports start optimistically up but owe a heartbeat.
enum class LfState : StateValue {
  UP_NEED_HB = 0,
  UP_HB_REQUESTED = 1,
  UP_WAIT = 2,
  DOWN_NEED_PROBE = 3,
  DOWN_WAIT = 4,
};

// Per-switch encoding of remote-failover states as integers.
class RfCoding {
 public:
  void build(std::vector<NodeId> fault_nodes);  // sorted unique afterwards

  size_t fault_count() const { return faults_.size(); }
  const std::vector<NodeId>& faults() const { return faults_; }

  StateValue value(RfPhase phase, NodeId fault) const;
  bool decode(StateValue v, RfPhase* phase, NodeId* fault) const;
  // 1 + 4 * fault_count
  size_t state_space() const { return 1 + 4 * faults_.size(); }

 private:
  std::vector<NodeId> faults_;
};

// Granularity of the stateless transit entries of table 1. Fault and
// probe labels carry the failed node, so a transit hop can either match
// the whole class through one wildcard entry or install one exact-label
// entry per fault value the way a label-switched table would.
struct EntryPolicy {
  bool per_fault_probe_out = true;
  bool per_fault_probe_return = true;
  bool per_fault_bounce = true;
  bool per_fault_backup = false;
  bool per_fault_reroute_goto = false;
  // Emit the two down-state entries of every (port, forwarded demand)
  // pair, matching the port-times-demand accounting, or only for the
  // demand's own output port.
  bool down_pairs_all_ports = true;
  // Where the alternative port is the packet's own input port, the divert
  // action does not depend on the demand and one entry pair per port can
  // cover every demand; detour-owning nodes still need per-demand pairs.
  bool down_pairs_shared_bounce = false;
};

struct SwitchConfig {
  NodeId node = kNoNode;
  os::SwitchPipeline pipeline;
  RfCoding rf_coding;
  EntryPolicy policy;

  std::array<size_t, 4> entry_counts{};  // includes catch-alls
  size_t transport_ports = 0;
  size_t total_ports = 0;
  size_t rf_demands = 0;       // demands rerouted at this switch
  uint64_t rf_pairs = 0;       // sum of fault counts over those demands
  size_t fwd_demands = 0;      // demands with an output port here (D_local)
  size_t down_pair_units = 0;  // (port, demand-or-shared) down-state pairs

  size_t total_entries() const {
    return entry_counts[0] + entry_counts[1] + entry_counts[2] +
           entry_counts[3];
  }
};

// Per-demand timeouts resolved against the topology.
struct PlanTimings {
  std::vector<TimeNs> delta1;  // per fault state, bounce-path round trip
  std::vector<TimeNs> delta2;
  TimeNs delta3 = 0;
  TimeNs delta4 = 0;
};

struct CompiledNetwork {
  Topology topo;
  std::vector<PathPlan> plans;
  TimeoutProfile profile;
  std::vector<PlanTimings> timings;   // parallel to plans
  std::vector<SwitchConfig> configs;  // indexed by NodeId

  const SwitchConfig& config(NodeId n) const { return configs[n]; }
};

// Translates routing material into the four-table pipeline of every
// switch: stateless port preparation and transit forwarding in tables 0-1,
// the remote-failover machine in table 2, the heartbeat-driven local
// failover in table 3.
CompiledNetwork compile(Topology topo, std::vector<PathPlan> plans,
                        TimeoutProfile profile, bool parallel = true,
                        EntryPolicy policy = {});

struct EntryCounts {
  std::array<size_t, 4> per_table{};
  size_t total = 0;
  // closed forms the table contents must meet exactly (catch-alls are
  // counted separately, one for each of tables 1..3)
  uint64_t expected_table2 = 0;  // 7 * sum of fault counts of rerouted demands
  uint64_t expected_table3 = 0;  // 3 * P_tr + 2 * down_pair_units
  bool formulas_hold = false;
};

EntryCounts count_entries(const SwitchConfig& cfg);

// One line per flow entry: table, priority, match, actions.
void dump_config(const CompiledNetwork& net, std::ostream& os);
void dump_config(const Topology& topo, const SwitchConfig& cfg,
                 std::ostream& os);

}  // namespace spider
