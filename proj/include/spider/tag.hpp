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

#include "spider/types.hpp"

namespace spider {

// Forwarding tag carried by every packet inside the transport network.
// NONE appears only at edge ports, before the ingress push and after the
// egress pop. FAULT and PROBE carry the unreachable / probed node.
struct Tag {
  enum class Kind : uint8_t { NONE, DATA0, FAULT, HB_REQ, HB_REPLY, PROBE };

  Kind kind = Kind::NONE;
  NodeId node = kNoNode;

  bool operator==(const Tag&) const = default;

  static Tag none() { return {Kind::NONE, kNoNode}; }
  static Tag data0() { return {Kind::DATA0, kNoNode}; }
  static Tag fault(NodeId i) { return {Kind::FAULT, i}; }
  static Tag hb_req() { return {Kind::HB_REQ, kNoNode}; }
  static Tag hb_reply() { return {Kind::HB_REPLY, kNoNode}; }
  static Tag probe(NodeId i) { return {Kind::PROBE, i}; }

  // Packets that carry demand traffic. Probe and heartbeat-reply copies are
  // switch-generated duplicates and never count against demand accounting.
  bool is_data() const {
    return kind == Kind::NONE || kind == Kind::DATA0 ||
           kind == Kind::FAULT || kind == Kind::HB_REQ;
  }
};

std::string to_string(const Tag& t);

}  // namespace spider
