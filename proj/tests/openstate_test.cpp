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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "spider/openstate/pipeline.hpp"

using namespace spider;
using namespace spider::os;

namespace {

Packet mk_pkt(NodeId src, NodeId dst, Tag tag = Tag::data0()) {
  Packet p;
  p.eth_src = src;
  p.eth_dst = dst;
  p.tag = tag;
  return p;
}

StateTable demand_table(StateValue def = 0) {
  return StateTable(Scope{Field::ETH_SRC, Field::ETH_DST},
                    Scope{Field::ETH_SRC, Field::ETH_DST}, def);
}

}  // namespace

TEST_CASE("lookup of an empty table returns the default state") {
  StateTable t = demand_table(7);
  CHECK(t.lookup(mk_pkt(1, 2), 1, ms(5)) == 7);
  CHECK(t.empty());
}

TEST_CASE("set then lookup returns the written state") {
  StateTable t = demand_table();
  SetStateArgs args;
  args.state = 5;
  t.set_state(mk_pkt(1, 2), 1, args, ms(1));
  CHECK(t.lookup(mk_pkt(1, 2), 1, ms(2)) == 5);
  CHECK(t.lookup(mk_pkt(2, 1), 1, ms(2)) == 0);  // reverse key is distinct
}

TEST_CASE("update scope reversed from lookup scope shares bidirectional state") {
  StateTable t(Scope{Field::ETH_SRC, Field::ETH_DST},
               Scope{Field::ETH_DST, Field::ETH_SRC}, 0);
  SetStateArgs args;
  args.state = 7;
  // A->B writes under the reversed key, so B->A reads it back.
  t.set_state(mk_pkt(10, 20), 1, args, ms(1));
  CHECK(t.lookup(mk_pkt(20, 10), 1, ms(2)) == 7);
  CHECK(t.lookup(mk_pkt(10, 20), 1, ms(2)) == 0);
}

TEST_CASE("writing the default state with no timeouts is a no-op") {
  StateTable t = demand_table();
  SetStateArgs args;
  args.state = 0;
  t.set_state(mk_pkt(1, 2), 1, args, ms(1));
  CHECK(t.empty());
  CHECK(t.lookup(mk_pkt(1, 2), 1, ms(2)) == 0);
}

TEST_CASE("hard timeout expires counting from installation") {
  StateTable t = demand_table();
  SetStateArgs args;
  args.state = 3;
  args.hard_timeout = ms(10);
  args.hard_rollback = 0;
  t.set_state(mk_pkt(1, 2), 1, args, 0);
  CHECK(t.lookup(mk_pkt(1, 2), 1, ms(9)) == 3);
  CHECK(t.lookup(mk_pkt(1, 2), 1, ms(11)) == 0);
}

TEST_CASE("idle timeout runs from the last match") {
  StateTable t = demand_table();
  SetStateArgs args;
  args.state = 3;
  args.idle_timeout = ms(3);
  args.idle_rollback = 1;
  t.set_state(mk_pkt(1, 2), 1, args, 0);
  CHECK(t.lookup(mk_pkt(1, 2), 1, ms(2)) == 3);  // refresh at 2ms
  CHECK(t.lookup(mk_pkt(1, 2), 1, us(4900)) == 3);
  StateTable t2 = demand_table();
  t2.set_state(mk_pkt(1, 2), 1, args, 0);
  CHECK(t2.lookup(mk_pkt(1, 2), 1, ms(2)) == 3);
  CHECK(t2.lookup(mk_pkt(1, 2), 1, us(5100)) == 1);
}

TEST_CASE("hard timeout ignores matches") {
  StateTable t = demand_table();
  SetStateArgs args;
  args.state = 9;
  args.idle_timeout = ms(3);
  args.idle_rollback = 1;
  args.hard_timeout = ms(5);
  args.hard_rollback = 2;
  t.set_state(mk_pkt(1, 2), 1, args, 0);
  for (TimeNs now = ms(1); now <= ms(4); now += ms(1))
    CHECK(t.lookup(mk_pkt(1, 2), 1, now) == 9);
  auto ex = t.expire(ms(5));
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].cause == ExpiryCause::HARD);
  CHECK(ex[0].new_state == 2);
  CHECK(ex[0].deadline == ms(5));
}

TEST_CASE("idle fires before hard on identical deadlines") {
  StateTable t = demand_table();
  SetStateArgs args;
  args.state = 4;
  args.idle_timeout = ms(5);
  args.idle_rollback = 1;
  args.hard_timeout = ms(5);
  args.hard_rollback = 2;
  t.set_state(mk_pkt(1, 2), 1, args, 0);
  auto ex = t.expire(ms(5));
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].cause == ExpiryCause::IDLE);
  CHECK(ex[0].new_state == 1);
}

TEST_CASE("expiry list is ordered by deadline then key") {
  StateTable t = demand_table();
  SetStateArgs args;
  args.state = 5;
  args.hard_timeout = ms(10);
  t.set_state(mk_pkt(2, 3), 1, args, 0);
  args.hard_timeout = ms(4);
  t.set_state(mk_pkt(9, 9), 1, args, 0);
  args.hard_timeout = ms(4);
  t.set_state(mk_pkt(1, 2), 1, args, 0);
  auto ex = t.expire(ms(20));
  REQUIRE(ex.size() == 3);
  CHECK(ex[0].deadline == ms(4));
  CHECK(ex[0].key.values[0] == 1);
  CHECK(ex[1].deadline == ms(4));
  CHECK(ex[1].key.values[0] == 9);
  CHECK(ex[2].deadline == ms(10));
}

TEST_CASE("timers are single-shot: rollback clears both timeouts") {
  StateTable t = demand_table();
  SetStateArgs args;
  args.state = 5;
  args.idle_timeout = ms(1);
  args.idle_rollback = 3;
  args.hard_timeout = ms(10);
  args.hard_rollback = 0;
  t.set_state(mk_pkt(1, 2), 1, args, 0);
  CHECK(t.lookup(mk_pkt(1, 2), 1, ms(2)) == 3);
  // the rollback state has no timers left: stays at 3 forever
  CHECK(t.lookup(mk_pkt(1, 2), 1, ms(100)) == 3);
  CHECK(!t.next_deadline());
}

TEST_CASE("lazy and eager expiry are observably equivalent") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> key_d(0, 3);
  std::uniform_int_distribution<int> op_d(0, 9);
  std::uniform_int_distribution<TimeNs> step_d(1, us(900));

  StateTable lazy = demand_table();
  StateTable eager = demand_table();
  TimeNs now = 0;
  for (int i = 0; i < 4000; ++i) {
    now += step_d(rng);
    int key = key_d(rng);
    Packet pkt = mk_pkt(100 + key, 200);
    int op = op_d(rng);
    // the eager variant forces expiry at arbitrary instants
    if (op < 3) eager.expire(now);
    if (op < 5) {
      SetStateArgs args;
      args.state = static_cast<StateValue>(1 + op);
      args.idle_timeout = op % 2 ? ms(2) : kNoTimeout;
      args.idle_rollback = 7;
      args.hard_timeout = ms(5);
      args.hard_rollback = 8;
      lazy.set_state(pkt, 1, args, now);
      eager.set_state(pkt, 1, args, now);
    } else {
      CHECK(lazy.lookup(pkt, 1, now) == eager.lookup(pkt, 1, now));
    }
  }
}

TEST_CASE("flow match picks the unique highest-priority entry") {
  FlowTable t;
  FlowEntry hb;
  hb.priority = 10;
  hb.match.tag = TagPattern::exact(Tag::hb_req());
  hb.actions = {{ActionDrop{}}};
  t.add(hb);
  FlowEntry fallthrough;
  fallthrough.priority = 1;
  fallthrough.actions = {{ActionGotoTable{3}}};
  t.add(fallthrough);

  const FlowEntry& m1 = t.match(0, Tag::hb_req(), 1, 0, {1, 2});
  CHECK(m1.priority == 10);
  const FlowEntry& m2 = t.match(0, Tag::data0(), 1, 0, {1, 2});
  CHECK(m2.priority == 1);

  FlowTable t2;
  FlowEntry fi;
  fi.priority = 10;
  fi.match.tag = TagPattern::exact(Tag::fault(4));
  fi.actions = {{ActionDrop{}}};
  t2.add(fi);
  FlowEntry any;
  any.priority = 1;
  any.actions = {{ActionDrop{}}};
  t2.add(any);
  CHECK(t2.match(0, Tag::data0(), 1, 0, {1, 2}).priority == 1);
}

TEST_CASE("no matching entry is a pipeline fault") {
  FlowTable t;
  FlowEntry e;
  e.priority = 5;
  e.match.tag = TagPattern::exact(Tag::hb_reply());
  e.actions = {{ActionDrop{}}};
  t.add(e);
  CHECK_THROWS_AS(t.match(0, Tag::data0(), 1, 0, {1, 2}), PipelineFault);
}

TEST_CASE("equal-priority overlap is rejected at configuration time") {
  FlowTable t;
  FlowEntry a;
  a.priority = 5;
  a.match.tag = TagPattern::any_fault();
  a.actions = {{ActionDrop{}}};
  t.add(a);
  FlowEntry b;
  b.priority = 5;
  b.match.tag = TagPattern::exact(Tag::fault(3));
  b.actions = {{ActionDrop{}}};
  t.add(b);
  CHECK_THROWS_AS(t.check_unambiguous(), ConfigError);

  FlowTable ok;
  a.match.eth = DemandKey{1, 2};
  b.match.eth = DemandKey{1, 3};
  ok.add(a);
  ok.add(b);
  CHECK_NOTHROW(ok.check_unambiguous());
}

TEST_CASE("tag patterns match by class") {
  CHECK(TagPattern::any_fault().matches(Tag::fault(9)));
  CHECK(!TagPattern::any_fault().matches(Tag::probe(9)));
  CHECK(TagPattern::any_probe().matches(Tag::probe(2)));
  CHECK(!TagPattern::exact(Tag::fault(1)).matches(Tag::fault(2)));
  CHECK(TagPattern::any().matches(Tag::none()));
}

namespace {

// Tiny two-table pipeline: table 0 stamps metadata and forwards to a
// stateful table 2 whose entries flip state and emit.
SwitchPipeline mini_pipeline() {
  SwitchPipeline p;
  p.set_ports({{1, PortRole::TRANSPORT}, {2, PortRole::TRANSPORT}});

  FlowTable t0;
  FlowEntry in;
  in.priority = 1;
  in.actions = {{ActionSetMeta{7}}, {ActionGotoTable{2}}};
  t0.add(in);
  p.set_table(0, t0);

  FlowTable t2;
  {
    FlowEntry e;
    e.priority = 10;
    e.match.state = 0;
    ActionSetState st;
    st.table_id = 2;
    st.args.state = 1;
    e.actions = {{st}, {ActionOutput{2}}};
    t2.add(e);
  }
  {
    FlowEntry e;
    e.priority = 10;
    e.match.state = 1;
    ActionDuplicate dup;
    dup.first = {{ActionSetTag{Tag::hb_reply()}}, {ActionOutputInPort{}}};
    dup.second = {{ActionSetTag{Tag::data0()}}, {ActionOutput{2}}};
    e.actions = {{dup}};
    t2.add(e);
  }
  p.set_table(2, t2);
  p.attach_state_table(2, StateTable(Scope{Field::ETH_SRC, Field::ETH_DST},
                                     Scope{Field::ETH_SRC, Field::ETH_DST},
                                     0));
  return p;
}

}  // namespace

TEST_CASE("set-state during packet k is visible to packet k+1") {
  SwitchPipeline p = mini_pipeline();
  auto e1 = p.process_packet(mk_pkt(1, 2), 1, ms(1));
  REQUIRE(e1.size() == 1);
  CHECK(e1[0].port == 2);
  // second packet sees state 1 and gets duplicated
  auto e2 = p.process_packet(mk_pkt(1, 2), 1, ms(1));
  REQUIRE(e2.size() == 2);
  CHECK(e2[0].port == 1);  // bounced copy through the input port
  CHECK(e2[0].pkt.tag == Tag::hb_reply());
  CHECK(e2[1].port == 2);
  CHECK(e2[1].pkt.tag == Tag::data0());
}

TEST_CASE("emitted packets leave with metadata cleared") {
  SwitchPipeline p = mini_pipeline();
  auto e = p.process_packet(mk_pkt(1, 2), 1, ms(1));
  REQUIRE(e.size() == 1);
  CHECK(e[0].pkt.metadata == kNoMetadata);
}

TEST_CASE("goto targets must increase") {
  SwitchPipeline p = mini_pipeline();
  FlowTable bad;
  FlowEntry e;
  e.priority = 1;
  e.actions = {{ActionGotoTable{0}}};
  bad.add(e);
  p.set_table(2, bad);
  CHECK_THROWS_AS(p.check(), ConfigError);
}

TEST_CASE("scope referencing absent metadata is a configuration error") {
  StateTable t(Scope{Field::METADATA}, Scope{Field::METADATA}, 0);
  Packet pkt = mk_pkt(1, 2);  // metadata never written
  CHECK_THROWS_AS(t.lookup(pkt, 1, ms(1)), ConfigError);
}

TEST_CASE("pipeline determinism: same inputs, same emissions and states") {
  for (int round = 0; round < 2; ++round) {
    SwitchPipeline p = mini_pipeline();
    std::vector<std::string> trace;
    for (int i = 0; i < 20; ++i) {
      auto em = p.process_packet(mk_pkt(1 + i % 3, 2), 1, ms(i));
      for (auto& e : em)
        trace.push_back(std::to_string(e.port) + to_string(e.pkt.tag));
    }
    static std::vector<std::string> first;
    if (round == 0)
      first = trace;
    else
      CHECK(first == trace);
  }
}
