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
#include <vector>

#include "spider/compiler/compile.hpp"

namespace spider {

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> issues;

  void fail(std::string msg) {
    ok = false;
    issues.push_back(std::move(msg));
  }
};

// Static checks over a compiled switch: fresh state tables are empty, every
// state value written by a set-state fits the declared state space
// (1 + 4 * fault count for the remote failover, 5 values for the local
// failover), and the entry-count closed forms hold.
VerifyReport verify_state_sizing(const CompiledNetwork& net);

}  // namespace spider
