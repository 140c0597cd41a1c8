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

#include "spider/scenario_text.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace spider {

namespace {

struct ParseCtx {
  std::string origin;
  int line = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError(origin + ":" + std::to_string(line) + ": " + msg);
  }
};

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

double parse_number(const ParseCtx& ctx, const std::string& s,
                    std::string* suffix) {
  double v = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr == begin)
    ctx.fail("expected a number, got '" + s + "'");
  if (suffix) *suffix = std::string(res.ptr, end);
  return v;
}

TimeNs parse_duration(const ParseCtx& ctx, const std::string& s) {
  std::string unit;
  double v = parse_number(ctx, s, &unit);
  if (v < 0) ctx.fail("durations must be non-negative");
  if (unit == "ns") return static_cast<TimeNs>(v);
  if (unit == "us") return from_sec(v * 1e-6);
  if (unit == "ms") return from_sec(v * 1e-3);
  if (unit == "s") return from_sec(v);
  ctx.fail("duration '" + s + "' needs a unit (ns, us, ms, s)");
}

double parse_rate(const ParseCtx& ctx, const std::string& s) {
  std::string unit;
  double v = parse_number(ctx, s, &unit);
  if (v < 0) ctx.fail("rates must be non-negative");
  if (unit.empty() || unit == "pkt/s") return v;
  ctx.fail("rate '" + s + "' must be plain or end in pkt/s");
}

uint64_t parse_u64(const ParseCtx& ctx, const std::string& s) {
  uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    ctx.fail("expected an integer, got '" + s + "'");
  return v;
}

NodeId need_node(const ParseCtx& ctx, const Topology& topo,
                 const std::string& name) {
  NodeId n = topo.find_node(name);
  if (n == kNoNode) ctx.fail("unknown node '" + name + "'");
  return n;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin) {
  Scenario sc;
  ParseCtx ctx{origin, 0};
  bool have_topology = false;
  bool custom_topology = false;
  bool full_mesh = false;
  double full_mesh_rate = 0;
  int full_mesh_line = 0;

  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    ctx.line++;
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];

    if (kw == "topology") {
      if (have_topology) ctx.fail("duplicate topology directive");
      if (tok.size() >= 2 && tok[1] == "grid") {
        if (tok.size() != 3 && !(tok.size() == 5 && tok[3] == "delay"))
          ctx.fail("usage: topology grid <n> [delay <time>]");
        int n = static_cast<int>(parse_u64(ctx, tok[2]));
        TimeNs delay = tok.size() == 5 ? parse_duration(ctx, tok[4]) : us(250);
        try {
          sc.topo = grid_topology(n, delay);
        } catch (const std::exception& e) {
          ctx.fail(e.what());
        }
      } else if (tok.size() == 2 && tok[1] == "custom") {
        custom_topology = true;
      } else {
        ctx.fail("usage: topology grid <n> | topology custom");
      }
      have_topology = true;
    } else if (kw == "node") {
      if (!custom_topology) ctx.fail("node lines need 'topology custom'");
      if (tok.size() != 3 || (tok[2] != "edge" && tok[2] != "core"))
        ctx.fail("usage: node <name> edge|core");
      try {
        sc.topo.add_node(tok[1],
                         tok[2] == "edge" ? NodeRole::EDGE : NodeRole::CORE);
      } catch (const std::exception& e) {
        ctx.fail(e.what());
      }
    } else if (kw == "link") {
      if (!custom_topology) ctx.fail("link lines need 'topology custom'");
      if (tok.size() != 4) ctx.fail("usage: link <a> <b> <delay>");
      NodeId a = need_node(ctx, sc.topo, tok[1]);
      NodeId b = need_node(ctx, sc.topo, tok[2]);
      try {
        sc.topo.add_link(a, b, parse_duration(ctx, tok[3]));
      } catch (const std::exception& e) {
        ctx.fail(e.what());
      }
    } else if (kw == "demand") {
      if (!have_topology) ctx.fail("demand before topology");
      if (tok.size() < 4) ctx.fail("usage: demand <src> <dst> cbr|ramp ...");
      NodeId src = need_node(ctx, sc.topo, tok[1]);
      NodeId dst = need_node(ctx, sc.topo, tok[2]);
      DemandSpec ds;
      if (tok[3] == "cbr") {
        if (tok.size() != 5) ctx.fail("usage: demand <src> <dst> cbr <rate>");
        double rate = parse_rate(ctx, tok[4]);
        ds.demand = {src, dst, rate};
        ds.profile = TrafficProfile::cbr(rate);
      } else if (tok[3] == "ramp") {
        if (tok.size() != 7)
          ctx.fail("usage: demand <src> <dst> ramp <from> <to> <duration>");
        double r0 = parse_rate(ctx, tok[4]);
        double r1 = parse_rate(ctx, tok[5]);
        TimeNs dur = parse_duration(ctx, tok[6]);
        ds.demand = {src, dst, r0};
        ds.profile = TrafficProfile::ramp(r0, r1, dur);
      } else {
        ctx.fail("unknown traffic profile '" + tok[3] + "'");
      }
      sc.demands.push_back(ds);
    } else if (kw == "demands") {
      if (tok.size() != 4 || tok[1] != "full_mesh" || tok[2] != "cbr")
        ctx.fail("usage: demands full_mesh cbr <rate>");
      full_mesh = true;
      full_mesh_rate = parse_rate(ctx, tok[3]);
      full_mesh_line = ctx.line;
    } else if (kw == "timeout") {
      if (tok.size() != 3) ctx.fail("usage: timeout d1..d7 <duration>|auto");
      TimeNs v = tok[2] == "auto" ? kNoTimeout : parse_duration(ctx, tok[2]);
      if (tok[1] == "d1") sc.timeouts.delta1 = v;
      else if (tok[1] == "d2") sc.timeouts.delta2 = v;
      else if (tok[1] == "d3") sc.timeouts.delta3 = v;
      else if (tok[1] == "d4") sc.timeouts.delta4 = v;
      else if (tok[1] == "d5") sc.timeouts.delta5 = v;
      else if (tok[1] == "d6") sc.timeouts.delta6 = v;
      else if (tok[1] == "d7") sc.timeouts.delta7 = v;
      else ctx.fail("unknown timeout '" + tok[1] + "'");
      if ((tok[1] == "d5" || tok[1] == "d6" || tok[1] == "d7") &&
          v == kNoTimeout)
        ctx.fail(tok[1] + " cannot be auto");
    } else if (kw == "fail") {
      if (!have_topology) ctx.fail("fail before topology");
      FaultSpec f;
      size_t at_pos;
      if (tok.size() >= 2 && tok[1] == "link") {
        if (tok.size() < 6) ctx.fail("usage: fail link <a> <b> at <time>");
        NodeId a = need_node(ctx, sc.topo, tok[2]);
        NodeId b = need_node(ctx, sc.topo, tok[3]);
        f.kind = FaultSpec::Kind::LINK;
        bool found = false;
        for (LinkId l : sc.topo.links_at(a)) {
          if (sc.topo.peer(l, a) == b) {
            f.link = l;
            found = true;
            break;
          }
        }
        if (!found) ctx.fail("no link between those nodes");
        at_pos = 4;
      } else if (tok.size() >= 2 && tok[1] == "node") {
        if (tok.size() < 5) ctx.fail("usage: fail node <name> at <time>");
        f.kind = FaultSpec::Kind::NODE;
        f.node = need_node(ctx, sc.topo, tok[2]);
        at_pos = 3;
      } else {
        ctx.fail("usage: fail link|node ...");
      }
      if (tok.size() < at_pos + 2 || tok[at_pos] != "at")
        ctx.fail("expected 'at <time>'");
      f.at = parse_duration(ctx, tok[at_pos + 1]);
      if (tok.size() == at_pos + 4 && tok[at_pos + 2] == "repair")
        f.repair = parse_duration(ctx, tok[at_pos + 3]);
      else if (tok.size() != at_pos + 2)
        ctx.fail("trailing tokens after fault");
      sc.faults.push_back(f);
    } else if (kw == "mode") {
      if (tok.size() >= 2 && tok[1] == "spider") {
        if (tok.size() != 2) ctx.fail("usage: mode spider");
        sc.mode = Mode::SPIDER;
      } else if (tok.size() >= 2 && tok[1] == "baseline") {
        sc.mode = Mode::BASELINE;
        size_t p = 2;
        while (p < tok.size()) {
          if (tok[p] == "rtt" && p + 1 < tok.size()) {
            sc.baseline.rtt = parse_duration(ctx, tok[p + 1]);
            p += 2;
          } else if (tok[p] == "proc" && p + 1 < tok.size()) {
            sc.baseline.proc_delay = parse_duration(ctx, tok[p + 1]);
            p += 2;
          } else if (tok[p] == "per_flow" && p + 1 < tok.size()) {
            sc.baseline.per_flow_install = parse_duration(ctx, tok[p + 1]);
            p += 2;
          } else {
            ctx.fail("unknown baseline option '" + tok[p] + "'");
          }
        }
      } else {
        ctx.fail("usage: mode spider | mode baseline rtt <time>");
      }
    } else if (kw == "seed") {
      if (tok.size() != 2) ctx.fail("usage: seed <integer>");
      sc.seed = parse_u64(ctx, tok[1]);
    } else if (kw == "duration") {
      if (tok.size() != 2) ctx.fail("usage: duration <time>");
      sc.duration = parse_duration(ctx, tok[1]);
    } else if (kw == "tiebreak") {
      if (tok.size() != 2 || (tok[1] != "lex" && tok[1] != "spread"))
        ctx.fail("usage: tiebreak lex|spread");
      sc.tie = tok[1] == "lex" ? TieBreak::LEX : TieBreak::SPREAD;
    } else if (kw == "random_phase") {
      if (tok.size() != 1) ctx.fail("random_phase takes no arguments");
      sc.random_phase = true;
    } else if (kw == "allow_unprotected") {
      if (tok.size() != 1) ctx.fail("allow_unprotected takes no arguments");
      sc.allow_unprotected = true;
    } else {
      ctx.fail("unknown directive '" + kw + "'");
    }
  }

  if (!have_topology) {
    ctx.line = 0;
    ctx.fail("scenario has no topology");
  }
  if (full_mesh) {
    ctx.line = full_mesh_line;
    try {
      for (const Demand& d : full_mesh_demands(sc.topo, full_mesh_rate))
        sc.demands.push_back({d, TrafficProfile::cbr(full_mesh_rate)});
    } catch (const std::exception& e) {
      ctx.fail(e.what());
    }
  }
  sc.validate();
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

}  // namespace spider
