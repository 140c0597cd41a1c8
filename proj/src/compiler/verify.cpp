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

#include "spider/compiler/verify.hpp"

namespace spider {

namespace {

using namespace os;

void walk_actions(const std::vector<Action>& actions,
                  const std::function<void(const ActionSetState&)>& fn) {
  for (const Action& a : actions) {
    if (auto* s = std::get_if<ActionSetState>(&a.v)) {
      fn(*s);
    } else if (auto* d = std::get_if<ActionDuplicate>(&a.v)) {
      walk_actions(d->first, fn);
      walk_actions(d->second, fn);
    }
  }
}

}  // namespace

VerifyReport verify_state_sizing(const CompiledNetwork& net) {
  VerifyReport rep;
  for (const SwitchConfig& cfg : net.configs) {
    const std::string& name = net.topo.node(cfg.node).name;

    for (int t : {2, 3}) {
      const os::StateTable* st = cfg.pipeline.state_table(t);
      if (!st) {
        rep.fail(name + ": table " + std::to_string(t) + " has no state table");
        continue;
      }
      if (!st->empty())
        rep.fail(name + ": state table " + std::to_string(t) +
                 " not empty at boot");
    }

    size_t rf_space = cfg.rf_coding.state_space();
    for (int t = 0; t < os::kNumTables; ++t) {
      for (const os::FlowEntry& e : cfg.pipeline.table(t).entries()) {
        walk_actions(e.actions, [&](const os::ActionSetState& s) {
          if (s.table_id == 2) {
            for (StateValue v :
                 {s.args.state, s.args.idle_rollback, s.args.hard_rollback}) {
              if (v >= rf_space)
                rep.fail(name + ": remote-failover value " + std::to_string(v) +
                         " outside 1+4F space of " + std::to_string(rf_space));
            }
          } else if (s.table_id == 3) {
            for (StateValue v :
                 {s.args.state, s.args.idle_rollback, s.args.hard_rollback}) {
              if (v > 4)
                rep.fail(name + ": local-failover value " + std::to_string(v) +
                         " outside the 5-state space");
            }
          } else {
            rep.fail(name + ": set_state targets stateless table " +
                     std::to_string(s.table_id));
          }
        });
      }
    }

    EntryCounts c = count_entries(cfg);
    if (!c.formulas_hold) {
      rep.fail(name + ": entry-count forms violated: table2=" +
               std::to_string(c.per_table[2]) + " expected " +
               std::to_string(c.expected_table2) + "+1, table3=" +
               std::to_string(c.per_table[3]) + " expected " +
               std::to_string(c.expected_table3) + "+1");
    }
  }
  return rep;
}

}  // namespace spider
