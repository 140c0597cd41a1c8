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

#include "spider/openstate/scope.hpp"

#include <sstream>

namespace spider::os {

std::string to_string(Field f) {
  switch (f) {
    case Field::ETH_SRC: return "eth_src";
    case Field::ETH_DST: return "eth_dst";
    case Field::METADATA: return "metadata";
    case Field::IN_PORT: return "in_port";
  }
  return "?";
}

Scope::Scope(std::initializer_list<Field> fields) {
  if (fields.size() == 0 || fields.size() > 4)
    throw ConfigError("scope must name between 1 and 4 fields");
  for (Field f : fields) {
    for (uint8_t i = 0; i < size_; ++i)
      if (fields_[i] == f)
        throw ConfigError("duplicate field in scope: " + to_string(f));
    fields_[size_++] = f;
  }
}

FlowKey extract_key(const Scope& scope, const Packet& pkt, PortId in_port) {
  FlowKey key;
  for (size_t i = 0; i < scope.size(); ++i) {
    uint64_t v = 0;
    switch (scope.at(i)) {
      case Field::ETH_SRC:
        if (pkt.eth_src == kNoNode)
          throw ConfigError("scope field eth_src absent from packet");
        v = pkt.eth_src;
        break;
      case Field::ETH_DST:
        if (pkt.eth_dst == kNoNode)
          throw ConfigError("scope field eth_dst absent from packet");
        v = pkt.eth_dst;
        break;
      case Field::METADATA:
        if (pkt.metadata == kNoMetadata)
          throw ConfigError("scope field metadata absent from packet");
        v = pkt.metadata;
        break;
      case Field::IN_PORT:
        v = in_port;
        break;
    }
    key.values[key.size++] = v;
  }
  return key;
}

std::string to_string(const FlowKey& k) {
  std::ostringstream os;
  os << "(";
  for (uint8_t i = 0; i < k.size; ++i) {
    if (i) os << ",";
    os << k.values[i];
  }
  os << ")";
  return os.str();
}

}  // namespace spider::os
