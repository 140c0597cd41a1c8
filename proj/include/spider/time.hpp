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

#include <cstdint>
#include <string>

namespace spider {

// Simulated time and durations, integer nanoseconds. State timeouts are
// configured with microsecond resolution; the finer event clock keeps
// constant-bit-rate tick times exact to rounding without drift.
using TimeNs = int64_t;

constexpr TimeNs kNoTimeout = -1;

constexpr TimeNs ns(int64_t v) { return v; }
constexpr TimeNs us(int64_t v) { return v * 1000; }
constexpr TimeNs ms(int64_t v) { return v * 1000000; }
constexpr TimeNs sec(int64_t v) { return v * 1000000000; }

constexpr double to_sec(TimeNs t) { return static_cast<double>(t) * 1e-9; }
constexpr double to_ms(TimeNs t) { return static_cast<double>(t) * 1e-6; }

TimeNs from_sec(double s);

// Fixed-width "<sec>.<9 digits>" rendering, stable across runs.
std::string format_time(TimeNs t);

}  // namespace spider
