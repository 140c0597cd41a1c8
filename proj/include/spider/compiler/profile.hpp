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

#include "spider/time.hpp"
#include "spider/types.hpp"

namespace spider {

// Configurable pipeline timeouts. delta1..delta4 default to values derived
// from the topology: delta1 is the bounce-path round trip of each fault
// state, delta3 the backup/primary delay difference, delta2 and delta4
// twice their idle counterparts. delta1/delta3 of zero disables the
// corresponding flowlet hold.
struct TimeoutProfile {
  TimeNs delta1 = kNoTimeout;  // idle, flowlet hold before enabling detour
  TimeNs delta2 = kNoTimeout;  // hard, upper bound for the previous hold
  TimeNs delta3 = kNoTimeout;  // idle, flowlet hold before re-enabling primary
  TimeNs delta4 = kNoTimeout;  // hard, upper bound for the previous hold
  TimeNs delta5 = ms(100);     // hard, probe generation period
  TimeNs delta6 = ms(2);       // hard, heartbeat request generation timeout
  TimeNs delta7 = ms(1);       // hard, heartbeat reply timeout

  void validate() const {
    if (delta5 <= 0 || delta6 <= 0 || delta7 <= 0)
      throw ValidationError("delta5..delta7 must be positive");
    if (delta1 != kNoTimeout && delta1 < 0)
      throw ValidationError("delta1 must be non-negative");
    if (delta3 != kNoTimeout && delta3 < 0)
      throw ValidationError("delta3 must be non-negative");
    if (delta1 != kNoTimeout && delta2 != kNoTimeout && delta2 <= delta1)
      throw ValidationError("delta2 must exceed delta1");
    if (delta3 != kNoTimeout && delta4 != kNoTimeout && delta4 <= delta3)
      throw ValidationError("delta4 must exceed delta3");
    if (delta2 != kNoTimeout && delta2 <= 0)
      throw ValidationError("delta2 must be positive");
    if (delta4 != kNoTimeout && delta4 <= 0)
      throw ValidationError("delta4 must be positive");
  }
};

}  // namespace spider
