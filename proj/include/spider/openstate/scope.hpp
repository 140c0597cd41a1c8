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

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>

#include "spider/packet.hpp"
#include "spider/types.hpp"

namespace spider::os {

enum class Field : uint8_t { ETH_SRC, ETH_DST, METADATA, IN_PORT };

std::string to_string(Field f);

// Ordered, duplicate-free list of header fields defining a state-table key.
// Lookup and update scopes may differ, which is what lets bidirectional
// flows share one state entry.
class Scope {
 public:
  Scope() = default;
  Scope(std::initializer_list<Field> fields);

  size_t size() const { return size_; }
  Field at(size_t i) const { return fields_[i]; }
  bool empty() const { return size_ == 0; }

  bool operator==(const Scope&) const = default;

 private:
  std::array<Field, 4> fields_{};
  uint8_t size_ = 0;
};

// Exact-match key extracted from a packet context per a Scope. No
// wildcards; comparison is field-by-field equality.
struct FlowKey {
  std::array<uint64_t, 4> values{};
  uint8_t size = 0;

  bool operator==(const FlowKey& o) const {
    if (size != o.size) return false;
    for (uint8_t i = 0; i < size; ++i)
      if (values[i] != o.values[i]) return false;
    return true;
  }
  bool operator<(const FlowKey& o) const {
    for (uint8_t i = 0; i < size && i < o.size; ++i)
      if (values[i] != o.values[i]) return values[i] < o.values[i];
    return size < o.size;
  }
};

struct FlowKeyHash {
  size_t operator()(const FlowKey& k) const {
    uint64_t h = 0x7fb5d329728ea185ull;
    for (uint8_t i = 0; i < k.size; ++i) h = mix64(h ^ k.values[i]);
    return static_cast<size_t>(h);
  }
};

// Throws ConfigError if the scope references a field the context does not
// carry (e.g. METADATA before any stage wrote it).
FlowKey extract_key(const Scope& scope, const Packet& pkt, PortId in_port);

std::string to_string(const FlowKey& k);

}  // namespace spider::os
