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

#include <cmath>
#include <cstdio>

#include "spider/tag.hpp"
#include "spider/time.hpp"

namespace spider {

TimeNs from_sec(double s) {
  return static_cast<TimeNs>(std::llround(s * 1e9));
}

std::string format_time(TimeNs t) {
  char buf[32];
  int64_t secs = t / 1000000000;
  int64_t frac = t % 1000000000;
  if (frac < 0) {
    secs -= 1;
    frac += 1000000000;
  }
  std::snprintf(buf, sizeof(buf), "%lld.%09lld", static_cast<long long>(secs),
                static_cast<long long>(frac));
  return buf;
}

std::string to_string(const Tag& t) {
  switch (t.kind) {
    case Tag::Kind::NONE: return "none";
    case Tag::Kind::DATA0: return "0";
    case Tag::Kind::FAULT: return "F(" + std::to_string(t.node) + ")";
    case Tag::Kind::HB_REQ: return "HB_req";
    case Tag::Kind::HB_REPLY: return "HB_reply";
    case Tag::Kind::PROBE: return "P(" + std::to_string(t.node) + ")";
  }
  return "?";
}

}  // namespace spider
