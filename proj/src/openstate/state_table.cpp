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

#include "spider/openstate/state_table.hpp"

#include <algorithm>

namespace spider::os {

std::optional<Expiry> StateTable::roll_if_expired(const FlowKey& key,
                                                  StateEntry& e,
                                                  TimeNs now) const {
  TimeNs idle_dl = idle_deadline(e);
  TimeNs hard_dl = hard_deadline(e);
  TimeNs dl = kNoTimeout;
  ExpiryCause cause = ExpiryCause::IDLE;
  // Idle wins ties; simultaneous deadlines are a degenerate configuration
  // and the fixed order keeps traces reproducible.
  if (idle_dl != kNoTimeout && idle_dl <= now) {
    dl = idle_dl;
    cause = ExpiryCause::IDLE;
  }
  if (hard_dl != kNoTimeout && hard_dl <= now &&
      (dl == kNoTimeout || hard_dl < dl)) {
    dl = hard_dl;
    cause = ExpiryCause::HARD;
  }
  if (dl == kNoTimeout) return std::nullopt;

  Expiry ex;
  ex.key = key;
  ex.old_state = e.state;
  ex.new_state = cause == ExpiryCause::IDLE ? e.idle_rollback : e.hard_rollback;
  ex.cause = cause;
  ex.deadline = dl;

  e.state = ex.new_state;
  e.idle_timeout = kNoTimeout;
  e.hard_timeout = kNoTimeout;
  e.last_matched = dl;
  e.installed_at = dl;
  return ex;
}

StateValue StateTable::lookup(const Packet& pkt, PortId in_port, TimeNs now) {
  FlowKey key = extract_key(lookup_scope_, pkt, in_port);
  auto it = entries_.find(key);
  if (it == entries_.end()) return default_state_;
  roll_if_expired(key, it->second, now);
  if (is_redundant(it->second)) {
    entries_.erase(it);
    return default_state_;
  }
  it->second.last_matched = now;
  return it->second.state;
}

StateValue StateTable::peek(const FlowKey& key, TimeNs now) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return default_state_;
  StateEntry copy = it->second;
  roll_if_expired(key, copy, now);
  return copy.state;
}

void StateTable::set_state(const Packet& pkt, PortId in_port,
                           const SetStateArgs& args, TimeNs now) {
  set_state_by_key(extract_key(update_scope_, pkt, in_port), args, now);
}

void StateTable::set_state_by_key(const FlowKey& key, const SetStateArgs& args,
                                  TimeNs now) {
  if (args.state == default_state_ && args.idle_timeout == kNoTimeout &&
      args.hard_timeout == kNoTimeout) {
    entries_.erase(key);
    return;
  }
  StateEntry e;
  e.state = args.state;
  e.idle_timeout = args.idle_timeout;
  e.hard_timeout = args.hard_timeout;
  e.idle_rollback = args.idle_rollback;
  e.hard_rollback = args.hard_rollback;
  e.last_matched = now;
  e.installed_at = now;
  entries_[key] = e;
}

std::vector<Expiry> StateTable::expire(TimeNs now) {
  std::vector<Expiry> out;
  std::vector<FlowKey> dead;
  for (auto& [key, entry] : entries_) {
    if (auto ex = roll_if_expired(key, entry, now)) out.push_back(*ex);
    if (is_redundant(entry)) dead.push_back(key);
  }
  for (const auto& k : dead) entries_.erase(k);
  std::sort(out.begin(), out.end(), [](const Expiry& a, const Expiry& b) {
    if (a.deadline != b.deadline) return a.deadline < b.deadline;
    return a.key < b.key;
  });
  return out;
}

std::optional<TimeNs> StateTable::next_deadline() const {
  std::optional<TimeNs> best;
  for (const auto& [key, e] : entries_) {
    for (TimeNs dl : {idle_deadline(e), hard_deadline(e)}) {
      if (dl == kNoTimeout) continue;
      if (!best || dl < *best) best = dl;
    }
  }
  return best;
}

}  // namespace spider::os
