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

#include <string>

#include "spider/simnet/scenario.hpp"

namespace spider {

// Declarative scenario files, one directive per line, units explicit:
//
//   topology grid 5 [delay 250us]
//   topology custom
//   node <name> edge|core
//   link <a> <b> <delay>
//   demand <src> <dst> cbr <rate>pkt/s
//   demand <src> <dst> ramp <from>pkt/s <to>pkt/s <duration>
//   demands full_mesh cbr <rate>pkt/s
//   timeout d1..d7 <duration>|auto
//   fail link <a> <b> at <time> [repair <time>]
//   fail node <name> at <time> [repair <time>]
//   mode spider
//   mode baseline rtt <time> [proc <time>] [per_flow <time>]
//   seed <integer>
//   duration <time>
//   tiebreak lex|spread
//   random_phase
//   allow_unprotected
//
// Unknown directives are rejected; errors carry the line number.
Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin = "scenario");

Scenario parse_scenario_file(const std::string& path);

}  // namespace spider
