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

#include "spider/openstate/pipeline.hpp"

#include <algorithm>

namespace spider::os {

void SwitchPipeline::attach_state_table(int id, StateTable table) {
  if (id != 2 && id != 3)
    throw ConfigError("only tables 2 and 3 are stateful");
  state_tables_[id] = std::move(table);
}

StateTable* SwitchPipeline::state_table(int id) {
  if (id < 0 || id >= kNumTables || !state_tables_[id]) return nullptr;
  return &*state_tables_[id];
}

const StateTable* SwitchPipeline::state_table(int id) const {
  if (id < 0 || id >= kNumTables || !state_tables_[id]) return nullptr;
  return &*state_tables_[id];
}

namespace {

void check_gotos(const std::vector<Action>& actions, int table_id) {
  for (size_t i = 0; i < actions.size(); ++i) {
    const Action& a = actions[i];
    if (auto* g = std::get_if<ActionGotoTable>(&a.v)) {
      if (g->table_id <= table_id || g->table_id >= kNumTables)
        throw ConfigError("goto target must be a later table");
      if (i + 1 != actions.size())
        throw ConfigError("goto must be the last action of its list");
    } else if (auto* d = std::get_if<ActionDuplicate>(&a.v)) {
      if (i + 1 != actions.size())
        throw ConfigError("duplicate must be the last action of its list");
      check_gotos(d->first, table_id);
      check_gotos(d->second, table_id);
    }
  }
}

}  // namespace

void SwitchPipeline::check() const {
  for (int t = 0; t < kNumTables; ++t) {
    tables_[t].check_unambiguous();
    for (const FlowEntry& e : tables_[t].entries()) check_gotos(e.actions, t);
  }
  if (state_tables_[0] || state_tables_[1])
    throw ConfigError("tables 0 and 1 are stateless");
}

std::vector<Emission> SwitchPipeline::process_packet(const Packet& pkt,
                                                     PortId in_port,
                                                     TimeNs now) {
  if (!ports_.count(in_port))
    throw ConfigError("packet received on unknown port " +
                      std::to_string(in_port));
  std::vector<Emission> out;
  Ctx ctx{pkt, in_port, now, &out};
  run_table(ctx, 0);
  return out;
}

void SwitchPipeline::run_table(Ctx& ctx, int table_id) {
  StateValue state = 0;
  if (state_tables_[table_id]) {
    state = state_tables_[table_id]->lookup(ctx.pkt, ctx.in_port, ctx.now);
  }
  const FlowEntry& entry = tables_[table_id].match(
      state, ctx.pkt.tag, ctx.in_port, ctx.pkt.metadata, ctx.pkt.demand());
  run_actions(ctx, entry.actions, table_id);
}

void SwitchPipeline::run_actions(Ctx& ctx, const std::vector<Action>& actions,
                                 int table_id) {
  for (const Action& a : actions) {
    if (auto* v = std::get_if<ActionPushTag>(&a.v)) {
      ctx.pkt.tag = v->tag;
    } else if (auto* v = std::get_if<ActionSetTag>(&a.v)) {
      ctx.pkt.tag = v->tag;
    } else if (std::get_if<ActionPopTag>(&a.v)) {
      ctx.pkt.tag = Tag::none();
    } else if (auto* v = std::get_if<ActionOutput>(&a.v)) {
      Emission e{v->port, ctx.pkt};
      e.pkt.metadata = kNoMetadata;
      ctx.out->push_back(std::move(e));
    } else if (std::get_if<ActionOutputInPort>(&a.v)) {
      Emission e{ctx.in_port, ctx.pkt};
      e.pkt.metadata = kNoMetadata;
      ctx.out->push_back(std::move(e));
    } else if (auto* v = std::get_if<ActionSetMeta>(&a.v)) {
      ctx.pkt.metadata = v->value;
    } else if (auto* v = std::get_if<ActionSetState>(&a.v)) {
      StateTable* st = state_table(v->table_id);
      if (!st)
        throw ConfigError("set_state targets a table with no state table");
      st->set_state(ctx.pkt, ctx.in_port, v->args, ctx.now);
    } else if (auto* v = std::get_if<ActionGotoTable>(&a.v)) {
      run_table(ctx, v->table_id);
      return;
    } else if (std::get_if<ActionDrop>(&a.v)) {
      return;
    } else if (auto* v = std::get_if<ActionDuplicate>(&a.v)) {
      Packet saved = ctx.pkt;
      run_actions(ctx, v->first, table_id);
      ctx.pkt = saved;
      run_actions(ctx, v->second, table_id);
      return;
    }
  }
}

std::vector<StateTransition> SwitchPipeline::expire_timeouts(TimeNs now) {
  std::vector<StateTransition> out;
  for (int t : {2, 3}) {
    if (!state_tables_[t]) continue;
    for (const Expiry& ex : state_tables_[t]->expire(now)) {
      out.push_back({t, ex.key, ex.old_state, ex.new_state, ex.cause,
                     ex.deadline});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const StateTransition& a, const StateTransition& b) {
              if (a.deadline != b.deadline) return a.deadline < b.deadline;
              if (a.table_id != b.table_id) return a.table_id < b.table_id;
              return a.key < b.key;
            });
  return out;
}

std::optional<TimeNs> SwitchPipeline::next_deadline() const {
  std::optional<TimeNs> best;
  for (int t : {2, 3}) {
    if (!state_tables_[t]) continue;
    auto dl = state_tables_[t]->next_deadline();
    if (dl && (!best || *dl < *best)) best = dl;
  }
  return best;
}

}  // namespace spider::os
