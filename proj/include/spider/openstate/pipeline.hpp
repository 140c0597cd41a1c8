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
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "spider/openstate/flow_table.hpp"
#include "spider/openstate/state_table.hpp"

namespace spider::os {

inline constexpr int kNumTables = 4;

enum class PortRole : uint8_t { EDGE, TRANSPORT };

struct Emission {
  PortId port = 0;
  Packet pkt;
};

struct StateTransition {
  int table_id = 0;
  FlowKey key;
  StateValue old_state = 0;
  StateValue new_state = 0;
  ExpiryCause cause = ExpiryCause::IDLE;
  TimeNs deadline = 0;
};

// The four-stage pipeline of one switch. Tables 0 and 1 are stateless;
// tables 2 and 3 each carry a state table consulted before the flow match.
// Goto targets are strictly increasing, packets cannot revisit a stage.
class SwitchPipeline {
 public:
  SwitchPipeline() = default;

  void set_ports(std::map<PortId, PortRole> ports) { ports_ = std::move(ports); }
  void set_table(int id, FlowTable table) { tables_[id] = std::move(table); }
  void attach_state_table(int id, StateTable table);

  const std::map<PortId, PortRole>& ports() const { return ports_; }
  FlowTable& table(int id) { return tables_[id]; }
  const FlowTable& table(int id) const { return tables_[id]; }
  StateTable* state_table(int id);
  const StateTable* state_table(int id) const;

  // Validates goto monotonicity and per-table ambiguity.
  void check() const;

  // Runs the packet through tables 0..3. Set-state side effects apply in
  // action order and are visible to later stages of the same traversal and
  // to every following packet. Returns zero or more emissions; emitted
  // copies leave with metadata cleared.
  std::vector<Emission> process_packet(const Packet& pkt, PortId in_port,
                                       TimeNs now);

  // Eagerly roll back expired state entries in both stateful stages.
  std::vector<StateTransition> expire_timeouts(TimeNs now);

  std::optional<TimeNs> next_deadline() const;

 private:
  struct Ctx {
    Packet pkt;
    PortId in_port = 0;
    TimeNs now = 0;
    std::vector<Emission>* out = nullptr;
  };

  void run_table(Ctx& ctx, int table_id);
  // Returns true if the packet continued into another table or terminated.
  void run_actions(Ctx& ctx, const std::vector<Action>& actions, int table_id);

  std::array<FlowTable, kNumTables> tables_;
  std::optional<StateTable> state_tables_[kNumTables];
  std::map<PortId, PortRole> ports_;
};

}  // namespace spider::os
