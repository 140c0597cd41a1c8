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
#include <functional>
#include <stdexcept>
#include <string>

#include "spider/time.hpp"

namespace spider {

using NodeId = uint32_t;
using PortId = uint32_t;
using LinkId = uint32_t;
using StateValue = uint32_t;

constexpr NodeId kNoNode = 0xffffffffu;
constexpr PortId kEdgePort = 0;  // host-facing port of an edge node
constexpr uint64_t kNoMetadata = 0xffffffffffffffffull;

// An origin-destination demand is identified by its edge endpoints, the
// same way the pipeline keys flow state on the Ethernet address pair.
struct DemandKey {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;

  bool operator==(const DemandKey&) const = default;
};

struct DemandKeyHash {
  size_t operator()(const DemandKey& k) const {
    return std::hash<uint64_t>()((uint64_t(k.src) << 32) | k.dst);
  }
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A packet context no flow entry matches. Signals a compiler bug, not a
// runtime condition.
struct PipelineFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic 64-bit mixer used for tie-breaking and derived seeds.
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace spider
