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

#include "spider/simnet/sim.hpp"

namespace spider {

// Reactive baseline: switches run plain per-demand forwarding; a failure is
// detected locally and reported to the controller, which installs the
// recovery path of each affected demand after the round trip plus its
// processing and sequential per-flow installation costs. Packets meeting
// the broken segment in the interim are lost.
RunResult run_baseline(const Scenario& sc, const RunOptions& opts = {});

}  // namespace spider
