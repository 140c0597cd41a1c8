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

#include "spider/tag.hpp"
#include "spider/time.hpp"
#include "spider/types.hpp"

namespace spider {

struct Packet {
  NodeId eth_src = kNoNode;
  NodeId eth_dst = kNoNode;
  Tag tag = Tag::none();
  uint64_t seq = 0;           // per-demand, simulation-only accounting
  uint64_t metadata = kNoMetadata;  // one switch traversal only
  TimeNs created_at = 0;

  DemandKey demand() const { return {eth_src, eth_dst}; }
};

}  // namespace spider
