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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spider/openstate/state_table.hpp"
#include "spider/packet.hpp"
#include "spider/tag.hpp"
#include "spider/types.hpp"

namespace spider::os {

// Match pattern over the tag field. The abstract tag is wildcardable by
// class, which a transit node uses to forward any fault or probe label of
// one demand through the same entry.
struct TagPattern {
  enum class Kind : uint8_t { ANY, EXACT, ANY_FAULT, ANY_PROBE };

  Kind kind = Kind::ANY;
  Tag tag;

  static TagPattern any() { return {Kind::ANY, {}}; }
  static TagPattern exact(Tag t) { return {Kind::EXACT, t}; }
  static TagPattern any_fault() { return {Kind::ANY_FAULT, {}}; }
  static TagPattern any_probe() { return {Kind::ANY_PROBE, {}}; }

  bool matches(const Tag& t) const;
  // Whether two patterns can match a common tag (ambiguity checking).
  bool overlaps(const TagPattern& o) const;

  bool operator==(const TagPattern&) const = default;
};

struct Match {
  std::optional<StateValue> state;
  TagPattern tag = TagPattern::any();
  std::optional<PortId> in_port;
  std::optional<uint64_t> metadata;
  std::optional<DemandKey> eth;

  bool matches(StateValue st, const Tag& tag_v, PortId in_port_v,
               uint64_t metadata_v, const DemandKey& eth_v) const;
  bool overlaps(const Match& o) const;
};

struct ActionPushTag { Tag tag; };
struct ActionSetTag { Tag tag; };
struct ActionPopTag {};
struct ActionOutput { PortId port; };
struct ActionOutputInPort {};
struct ActionSetMeta { uint64_t value; };
struct ActionSetState {
  int table_id = 0;   // target state table (2 or 3)
  SetStateArgs args;
};
struct ActionGotoTable { int table_id = 0; };
struct ActionDrop {};
// Two copies with independent continuations; must be the last action.
struct ActionDuplicate {
  std::vector<struct Action> first;
  std::vector<struct Action> second;
};

struct Action {
  std::variant<ActionPushTag, ActionSetTag, ActionPopTag, ActionOutput,
               ActionOutputInPort, ActionSetMeta, ActionSetState,
               ActionGotoTable, ActionDrop, ActionDuplicate>
      v;
};

struct FlowEntry {
  int priority = 0;
  Match match;
  std::vector<Action> actions;
};

// Priority-ordered match-action table. Equal-priority entries must be
// pairwise disjoint; the check runs at configuration time so a runtime
// match is always unique.
class FlowTable {
 public:
  void add(FlowEntry entry);

  // Highest-priority matching entry; throws PipelineFault on no match.
  const FlowEntry& match(StateValue state, const Tag& tag, PortId in_port,
                         uint64_t metadata, const DemandKey& eth) const;

  // Throws ConfigError naming the offending pair if two entries of equal
  // priority can match the same packet context.
  void check_unambiguous() const;

  size_t size() const { return entries_.size(); }
  const std::vector<FlowEntry>& entries() const { return entries_; }

 private:
  std::vector<FlowEntry> entries_;  // kept sorted by descending priority
};

std::string to_string(const TagPattern& p);
std::string to_string(const Match& m);
std::string to_string(const Action& a);
std::string to_string(const FlowEntry& e);

}  // namespace spider::os
