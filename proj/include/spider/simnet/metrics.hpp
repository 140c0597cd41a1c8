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
#include <cstdint>
#include <vector>

#include "spider/time.hpp"
#include "spider/types.hpp"

namespace spider {

struct DemandMetrics {
  uint64_t sent = 0;
  uint64_t delivered = 0;
  uint64_t lost = 0;
  uint64_t out_of_order = 0;  // receiver-side sequence inversions
  uint64_t max_seq_seen = 0;
  TimeNs recovery_time = kNoTimeout;  // first delivery after failure - failure
};

// Per-second traffic counters of one link direction, recorded when packets
// are offered to the link.
struct LinkBin {
  uint64_t data = 0;
  uint64_t hb_req = 0;
  uint64_t hb_reply = 0;
  uint64_t probe = 0;
};

struct Metrics {
  std::vector<DemandMetrics> demands;
  uint64_t ctrl_msgs = 0;
  int64_t in_flight = 0;  // live demand packets when the run stopped
  TimeNs first_failure = kNoTimeout;
  // link_bins[link][direction][second]; direction 0 runs a->b.
  std::vector<std::array<std::vector<LinkBin>, 2>> link_bins;

  uint64_t total_sent() const;
  uint64_t total_delivered() const;
  uint64_t total_lost() const;
  uint64_t total_out_of_order() const;
  // sent == delivered + lost + in_flight
  bool conservation_holds() const;
};

}  // namespace spider
