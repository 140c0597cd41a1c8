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

#include "spider/simnet/scenario.hpp"

#include <cmath>
#include <set>

#include "spider/simnet/metrics.hpp"

namespace spider {

TimeNs TrafficProfile::tick_time(uint64_t k, TimeNs phase) const {
  switch (kind) {
    case Kind::CBR: {
      if (rate <= 0) return kNoTimeout;
      double t = (double(k) + 1.0) * 1e9 / rate;
      return phase + static_cast<TimeNs>(std::llround(t));
    }
    case Kind::RAMP: {
      // Cumulative count n(t) = r0 t + (r1 - r0) t^2 / (2 T); the k-th
      // packet goes out when n(t) reaches k + 1.
      double r0 = rate, r1 = end_rate;
      double T = to_sec(ramp_duration);
      double target = double(k) + 1.0;
      if (T <= 0) return kNoTimeout;
      double a = (r1 - r0) / (2.0 * T);
      double t;
      if (std::abs(a) < 1e-12) {
        if (r0 <= 0) return kNoTimeout;
        t = target / r0;
      } else {
        double disc = r0 * r0 + 4.0 * a * target;
        if (disc < 0) return kNoTimeout;  // ramp exhausted
        t = (-r0 + std::sqrt(disc)) / (2.0 * a);
        if (t < 0) t = (-r0 - std::sqrt(disc)) / (2.0 * a);
        if (t < 0) return kNoTimeout;
      }
      if (t > T + 1e-12) return kNoTimeout;
      return phase + from_sec(t);
    }
  }
  return kNoTimeout;
}

void Scenario::validate() const {
  topo.validate();
  if (duration <= 0) throw ValidationError("duration must be positive");
  if (demands.empty()) throw ValidationError("scenario has no demands");
  timeouts.validate();

  std::set<std::pair<NodeId, NodeId>> seen;
  for (const DemandSpec& d : demands) {
    if (d.demand.src == d.demand.dst)
      throw ValidationError("demand endpoints must differ");
    if (d.demand.src >= topo.node_count() || d.demand.dst >= topo.node_count())
      throw ValidationError("demand references unknown node");
    if (topo.node(d.demand.src).role != NodeRole::EDGE ||
        topo.node(d.demand.dst).role != NodeRole::EDGE)
      throw ValidationError("demand endpoints must be edge nodes");
    if (d.profile.rate < 0 || d.profile.end_rate < 0)
      throw ValidationError("traffic rates must be non-negative");
    if (!seen.insert({d.demand.src, d.demand.dst}).second)
      throw ValidationError("duplicate demand " +
                            topo.node(d.demand.src).name + ">" +
                            topo.node(d.demand.dst).name);
  }
  for (const FaultSpec& f : faults) {
    if (f.kind == FaultSpec::Kind::LINK && f.link >= topo.link_count())
      throw ValidationError("fault references unknown link");
    if (f.kind == FaultSpec::Kind::NODE && f.node >= topo.node_count())
      throw ValidationError("fault references unknown node");
    if (!f.after_reply && f.at < 0)
      throw ValidationError("fault instant must be non-negative");
    if (f.repair != kNoTimeout && !f.after_reply && f.repair <= f.at)
      throw ValidationError("repair must come after the failure");
  }
}

uint64_t Metrics::total_sent() const {
  uint64_t s = 0;
  for (const auto& d : demands) s += d.sent;
  return s;
}
uint64_t Metrics::total_delivered() const {
  uint64_t s = 0;
  for (const auto& d : demands) s += d.delivered;
  return s;
}
uint64_t Metrics::total_lost() const {
  uint64_t s = 0;
  for (const auto& d : demands) s += d.lost;
  return s;
}
uint64_t Metrics::total_out_of_order() const {
  uint64_t s = 0;
  for (const auto& d : demands) s += d.out_of_order;
  return s;
}
bool Metrics::conservation_holds() const {
  return total_sent() ==
         total_delivered() + total_lost() + static_cast<uint64_t>(in_flight);
}

}  // namespace spider
