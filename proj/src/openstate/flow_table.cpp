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

#include "spider/openstate/flow_table.hpp"

#include <algorithm>
#include <sstream>

namespace spider::os {

bool TagPattern::matches(const Tag& t) const {
  switch (kind) {
    case Kind::ANY: return true;
    case Kind::EXACT: return t == tag;
    case Kind::ANY_FAULT: return t.kind == Tag::Kind::FAULT;
    case Kind::ANY_PROBE: return t.kind == Tag::Kind::PROBE;
  }
  return false;
}

bool TagPattern::overlaps(const TagPattern& o) const {
  if (kind == Kind::ANY || o.kind == Kind::ANY) return true;
  if (kind == Kind::EXACT && o.kind == Kind::EXACT) return tag == o.tag;
  if (kind == Kind::EXACT) return o.matches(tag);
  if (o.kind == Kind::EXACT) return matches(o.tag);
  return kind == o.kind;
}

bool Match::matches(StateValue st, const Tag& tag_v, PortId in_port_v,
                    uint64_t metadata_v, const DemandKey& eth_v) const {
  if (state && *state != st) return false;
  if (!tag.matches(tag_v)) return false;
  if (in_port && *in_port != in_port_v) return false;
  if (metadata && *metadata != metadata_v) return false;
  if (eth && !(*eth == eth_v)) return false;
  return true;
}

bool Match::overlaps(const Match& o) const {
  if (state && o.state && *state != *o.state) return false;
  if (!tag.overlaps(o.tag)) return false;
  if (in_port && o.in_port && *in_port != *o.in_port) return false;
  if (metadata && o.metadata && *metadata != *o.metadata) return false;
  if (eth && o.eth && !(*eth == *o.eth)) return false;
  return true;
}

void FlowTable::add(FlowEntry entry) {
  auto pos = std::upper_bound(
      entries_.begin(), entries_.end(), entry,
      [](const FlowEntry& a, const FlowEntry& b) { return a.priority > b.priority; });
  entries_.insert(pos, std::move(entry));
}

const FlowEntry& FlowTable::match(StateValue state, const Tag& tag,
                                  PortId in_port, uint64_t metadata,
                                  const DemandKey& eth) const {
  for (const FlowEntry& e : entries_) {
    if (e.match.matches(state, tag, in_port, metadata, eth)) return e;
  }
  std::ostringstream os;
  os << "no flow entry matches context: state=" << state
     << " tag=" << to_string(tag) << " in_port=" << in_port;
  throw PipelineFault(os.str());
}

void FlowTable::check_unambiguous() const {
  for (size_t i = 0; i < entries_.size(); ++i) {
    for (size_t j = i + 1; j < entries_.size(); ++j) {
      if (entries_[i].priority != entries_[j].priority) continue;
      if (entries_[i].match.overlaps(entries_[j].match)) {
        throw ConfigError("ambiguous flow entries at priority " +
                          std::to_string(entries_[i].priority) + ": [" +
                          to_string(entries_[i]) + "] vs [" +
                          to_string(entries_[j]) + "]");
      }
    }
  }
}

std::string to_string(const TagPattern& p) {
  switch (p.kind) {
    case TagPattern::Kind::ANY: return "*";
    case TagPattern::Kind::EXACT: return to_string(p.tag);
    case TagPattern::Kind::ANY_FAULT: return "F(*)";
    case TagPattern::Kind::ANY_PROBE: return "P(*)";
  }
  return "?";
}

std::string to_string(const Match& m) {
  std::ostringstream os;
  os << "state=" << (m.state ? std::to_string(*m.state) : "*");
  os << " tag=" << to_string(m.tag);
  os << " in=" << (m.in_port ? std::to_string(*m.in_port) : "*");
  os << " meta=" << (m.metadata ? std::to_string(*m.metadata) : "*");
  if (m.eth)
    os << " eth=" << m.eth->src << ">" << m.eth->dst;
  else
    os << " eth=*";
  return os.str();
}

namespace {

std::string actions_to_string(const std::vector<Action>& actions) {
  std::string s;
  for (size_t i = 0; i < actions.size(); ++i) {
    if (i) s += ", ";
    s += to_string(actions[i]);
  }
  return s;
}

std::string timeout_to_string(TimeNs t) {
  if (t == kNoTimeout) return "-";
  std::ostringstream os;
  os << t / 1000 << "us";
  return os.str();
}

}  // namespace

std::string to_string(const Action& a) {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ActionPushTag>) {
          os << "push_tag " << to_string(v.tag);
        } else if constexpr (std::is_same_v<T, ActionSetTag>) {
          os << "set_tag " << to_string(v.tag);
        } else if constexpr (std::is_same_v<T, ActionPopTag>) {
          os << "pop_tag";
        } else if constexpr (std::is_same_v<T, ActionOutput>) {
          os << "output " << v.port;
        } else if constexpr (std::is_same_v<T, ActionOutputInPort>) {
          os << "output in_port";
        } else if constexpr (std::is_same_v<T, ActionSetMeta>) {
          os << "set_meta " << v.value;
        } else if constexpr (std::is_same_v<T, ActionSetState>) {
          os << "set_state(t" << v.table_id << " v=" << v.args.state
             << " idle=" << timeout_to_string(v.args.idle_timeout) << "/"
             << v.args.idle_rollback
             << " hard=" << timeout_to_string(v.args.hard_timeout) << "/"
             << v.args.hard_rollback << ")";
        } else if constexpr (std::is_same_v<T, ActionGotoTable>) {
          os << "goto " << v.table_id;
        } else if constexpr (std::is_same_v<T, ActionDrop>) {
          os << "drop";
        } else if constexpr (std::is_same_v<T, ActionDuplicate>) {
          os << "dup[" << actions_to_string(v.first) << " | "
             << actions_to_string(v.second) << "]";
        }
      },
      a.v);
  return os.str();
}

std::string to_string(const FlowEntry& e) {
  std::ostringstream os;
  os << "prio=" << e.priority << " match[" << to_string(e.match) << "] act["
     << actions_to_string(e.actions) << "]";
  return os.str();
}

}  // namespace spider::os
