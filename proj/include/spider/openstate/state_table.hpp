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

#include <optional>
#include <unordered_map>
#include <vector>

#include "spider/openstate/scope.hpp"
#include "spider/time.hpp"
#include "spider/types.hpp"

namespace spider::os {

struct SetStateArgs {
  StateValue state = 0;
  TimeNs idle_timeout = kNoTimeout;
  TimeNs hard_timeout = kNoTimeout;
  StateValue idle_rollback = 0;
  StateValue hard_rollback = 0;
};

struct StateEntry {
  StateValue state = 0;
  TimeNs idle_timeout = kNoTimeout;
  TimeNs hard_timeout = kNoTimeout;
  StateValue idle_rollback = 0;
  StateValue hard_rollback = 0;
  TimeNs last_matched = 0;
  TimeNs installed_at = 0;
};

enum class ExpiryCause : uint8_t { IDLE, HARD };

struct Expiry {
  FlowKey key;
  StateValue old_state = 0;
  StateValue new_state = 0;
  ExpiryCause cause = ExpiryCause::IDLE;
  TimeNs deadline = 0;
};

// Exact-match state table of one pipeline stage. Lookup of an absent key
// returns the default state. Idle timeouts run from the last lookup that
// matched the entry, hard timeouts from the last insert/update; expiry
// installs the rollback value and clears both timers. Expiry is applied
// lazily on access and can also be forced eagerly via expire(); the two are
// observably equivalent.
class StateTable {
 public:
  StateTable() = default;
  StateTable(Scope lookup, Scope update, StateValue default_state)
      : lookup_scope_(lookup), update_scope_(update),
        default_state_(default_state) {}

  const Scope& lookup_scope() const { return lookup_scope_; }
  const Scope& update_scope() const { return update_scope_; }
  StateValue default_state() const { return default_state_; }

  // Lookup by the lookup scope; refreshes last_matched on hit.
  StateValue lookup(const Packet& pkt, PortId in_port, TimeNs now);

  // Read-only variant used by probes/tests, no refresh.
  StateValue peek(const FlowKey& key, TimeNs now) const;

  // set-state by the update scope.
  void set_state(const Packet& pkt, PortId in_port, const SetStateArgs& args,
                 TimeNs now);
  void set_state_by_key(const FlowKey& key, const SetStateArgs& args,
                        TimeNs now);

  // Roll back every entry whose deadline is <= now. Transitions come out
  // ordered by (deadline, key). Ties between idle and hard fire idle first.
  std::vector<Expiry> expire(TimeNs now);

  // Earliest pending deadline, if any (for the event-driven driver).
  std::optional<TimeNs> next_deadline() const;

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const std::unordered_map<FlowKey, StateEntry, FlowKeyHash>& entries() const {
    return entries_;
  }

 private:
  // Deadline of one timer class; kNoTimeout if unarmed.
  static TimeNs idle_deadline(const StateEntry& e) {
    return e.idle_timeout == kNoTimeout ? kNoTimeout
                                        : e.last_matched + e.idle_timeout;
  }
  static TimeNs hard_deadline(const StateEntry& e) {
    return e.hard_timeout == kNoTimeout ? kNoTimeout
                                        : e.installed_at + e.hard_timeout;
  }

  // Applies at most one rollback; timers are single-shot.
  std::optional<Expiry> roll_if_expired(const FlowKey& key, StateEntry& e,
                                        TimeNs now) const;

  bool is_redundant(const StateEntry& e) const {
    return e.state == default_state_ && e.idle_timeout == kNoTimeout &&
           e.hard_timeout == kNoTimeout;
  }

  Scope lookup_scope_;
  Scope update_scope_;
  StateValue default_state_ = 0;
  std::unordered_map<FlowKey, StateEntry, FlowKeyHash> entries_;
};

}  // namespace spider::os
