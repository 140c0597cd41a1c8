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

#include "spider/simnet/sweeps.hpp"

#include <omp.h>

#include <random>

namespace spider {

Scenario two_node_scenario(double rate, TimeNs delta6, TimeNs delta7,
                           TimeNs warm, TimeNs fail_offset) {
  Scenario sc;
  NodeId a = sc.topo.add_node("A", NodeRole::EDGE);
  NodeId b = sc.topo.add_node("B", NodeRole::EDGE);
  LinkId primary = sc.topo.add_link(a, b, us(250));
  sc.topo.add_link(a, b, us(250));  // parallel backup

  sc.demands.push_back({{a, b, rate}, TrafficProfile::cbr(rate)});
  sc.timeouts.delta6 = delta6;
  sc.timeouts.delta7 = delta7;
  sc.timeouts.delta5 = ms(250);
  sc.tie = TieBreak::LEX;  // keep both directions on the first link

  FaultSpec f;
  f.kind = FaultSpec::Kind::LINK;
  f.link = primary;
  f.after_reply = true;
  f.watch_node = a;
  f.watch_port = sc.topo.port_at(primary, a);
  f.at = warm;
  f.offset = fail_offset;
  sc.faults.push_back(f);

  sc.duration = warm + 2 * delta6 + delta7 + sec(1);
  return sc;
}

Scenario overhead_scenario(TimeNs delta6, double ramp_start, double ramp_end,
                           TimeNs ramp_duration, double reverse_rate) {
  Scenario sc;
  NodeId a = sc.topo.add_node("A", NodeRole::EDGE);
  NodeId b = sc.topo.add_node("B", NodeRole::EDGE);
  sc.topo.add_link(a, b, us(250));
  sc.topo.add_link(a, b, us(250));

  // The measured flow runs b -> a; the reverse feed gives the heartbeat
  // machinery of node b data packets to relabel.
  sc.demands.push_back(
      {{b, a, ramp_start},
       TrafficProfile::ramp(ramp_start, ramp_end, ramp_duration)});
  sc.demands.push_back({{a, b, reverse_rate}, TrafficProfile::cbr(reverse_rate)});
  sc.timeouts.delta6 = delta6;
  sc.timeouts.delta7 = ms(2);
  sc.timeouts.delta5 = sec(1);
  sc.tie = TieBreak::LEX;
  sc.duration = ramp_duration + sec(30);
  return sc;
}

Scenario chain_scenario(double rate, TimeNs fail_at, TimeNs repair_at,
                        uint64_t seed) {
  Scenario sc;
  NodeId s = sc.topo.add_node("s", NodeRole::EDGE);
  NodeId d = sc.topo.add_node("d", NodeRole::EDGE);
  NodeId a = sc.topo.add_node("a", NodeRole::CORE);
  NodeId b = sc.topo.add_node("b", NodeRole::CORE);
  NodeId x = sc.topo.add_node("x", NodeRole::CORE);
  NodeId y = sc.topo.add_node("y", NodeRole::CORE);
  NodeId z = sc.topo.add_node("z", NodeRole::CORE);
  sc.topo.add_link(s, a, us(500));
  sc.topo.add_link(a, b, us(250));
  sc.topo.add_link(b, d, us(250));
  sc.topo.add_link(s, x, us(500));
  sc.topo.add_link(x, y, us(500));
  sc.topo.add_link(y, z, us(500));
  sc.topo.add_link(z, d, us(500));

  sc.demands.push_back({{s, d, rate}, TrafficProfile::cbr(rate)});
  sc.timeouts.delta6 = ms(2);
  sc.timeouts.delta7 = ms(1);
  sc.timeouts.delta5 = ms(50);
  sc.seed = seed;
  sc.random_phase = true;
  sc.faults.push_back(FaultSpec::node_at(b, fail_at, repair_at));
  sc.duration = repair_at == kNoTimeout ? fail_at + sec(1)
                                        : repair_at + sec(1);
  return sc;
}

NodeId chain_fault_node(const Scenario& sc) {
  return sc.topo.find_node("b");
}

Scenario compare_scenario(int demands, Mode mode, TimeNs rtt, TimeNs fail_at,
                          uint64_t seed) {
  Scenario sc;
  std::vector<NodeId> srcs, dsts;
  for (int i = 0; i < 7; ++i)
    srcs.push_back(sc.topo.add_node("s" + std::to_string(i), NodeRole::EDGE));
  for (int i = 0; i < 5; ++i)
    dsts.push_back(sc.topo.add_node("t" + std::to_string(i), NodeRole::EDGE));
  NodeId a = sc.topo.add_node("a", NodeRole::CORE);
  NodeId j = sc.topo.add_node("j", NodeRole::CORE);
  NodeId i_ = sc.topo.add_node("i", NodeRole::CORE);
  NodeId b = sc.topo.add_node("b", NodeRole::CORE);
  NodeId a2 = sc.topo.add_node("a2", NodeRole::CORE);
  NodeId x2 = sc.topo.add_node("x2", NodeRole::CORE);
  NodeId j2 = sc.topo.add_node("j2", NodeRole::CORE);
  NodeId i2 = sc.topo.add_node("i2", NodeRole::CORE);
  NodeId b2 = sc.topo.add_node("b2", NodeRole::CORE);

  TimeNs dl = us(250);
  for (NodeId s : srcs) {
    sc.topo.add_link(s, a, dl);
    sc.topo.add_link(s, a2, dl);
  }
  sc.topo.add_link(a, j, dl);
  LinkId failed = sc.topo.add_link(j, i_, dl);
  sc.topo.add_link(i_, b, dl);
  sc.topo.add_link(a2, x2, dl);
  sc.topo.add_link(x2, j2, dl);
  sc.topo.add_link(j2, i2, dl);
  sc.topo.add_link(i2, b2, dl);
  for (NodeId t : dsts) {
    sc.topo.add_link(b, t, dl);
    sc.topo.add_link(b2, t, dl);
  }
  (void)failed;

  // Distinct (source, sink) pairs; 7 and 5 are coprime so the first 35
  // combinations are unique.
  for (int m = 0; m < demands; ++m) {
    Demand d{srcs[m % 7], dsts[m % 5], 100.0};
    sc.demands.push_back({d, TrafficProfile::cbr(100.0)});
  }

  sc.timeouts.delta6 = ms(2);
  sc.timeouts.delta7 = ms(1);
  sc.timeouts.delta5 = ms(500);
  sc.seed = seed;
  sc.random_phase = true;
  sc.mode = mode;
  sc.baseline.rtt = rtt;

  if (mode == Mode::SPIDER) {
    FaultSpec f;
    f.kind = FaultSpec::Kind::NODE;
    f.node = i_;
    f.after_reply = true;
    f.watch_node = j;
    f.watch_port = sc.topo.port_towards(j, i_);
    f.at = fail_at;
    f.offset = 0;  // caller adjusts for phase sampling
    sc.faults.push_back(f);
  } else {
    sc.faults.push_back(FaultSpec::node_at(i_, fail_at));
  }
  sc.duration = fail_at + ms(500);
  return sc;
}

std::vector<LossCell> loss_sweep(const std::vector<TimeNs>& delta6s,
                                 const std::vector<TimeNs>& delta7s,
                                 double rate, int tries, uint64_t seed,
                                 bool parallel) {
  // One phase fraction per try, shared by every cell, so the mean is
  // monotone in the timeouts by construction rather than by luck.
  std::mt19937_64 rng(mix64(seed));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> fractions(std::max(tries, 1));
  for (double& f : fractions) f = u(rng);

  struct Job {
    size_t cell;
    int try_idx;
    TimeNs d6, d7;
  };
  std::vector<Job> jobs;
  std::vector<LossCell> cells;
  for (TimeNs d6 : delta6s) {
    for (TimeNs d7 : delta7s) {
      LossCell c;
      c.delta6 = d6;
      c.delta7 = d7;
      c.per_try.assign(tries, 0);
      for (int k = 0; k < tries; ++k)
        jobs.push_back({cells.size(), k, d6, d7});
      cells.push_back(std::move(c));
    }
  }

  auto run_job = [&](const Job& jb) {
    if (rate <= 0) return uint64_t{0};
    TimeNs offset = static_cast<TimeNs>(fractions[jb.try_idx] * double(jb.d6));
    Scenario sc = two_node_scenario(rate, jb.d6, jb.d7, sec(1), offset);
    sc.seed = mix64(seed ^ (jb.cell << 8) ^ jb.try_idx);
    RunResult r = run(sc);
    return r.metrics.total_lost();
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < jobs.size(); ++i)
      cells[jobs[i].cell].per_try[jobs[i].try_idx] = run_job(jobs[i]);
  } else {
    for (size_t i = 0; i < jobs.size(); ++i)
      cells[jobs[i].cell].per_try[jobs[i].try_idx] = run_job(jobs[i]);
  }

  for (LossCell& c : cells) {
    double sum = 0;
    for (uint64_t v : c.per_try) sum += double(v);
    c.mean_lost = c.per_try.empty() ? 0 : sum / double(c.per_try.size());
  }
  return cells;
}

std::vector<OverheadPoint> overhead_run(TimeNs delta6, TimeNs duration) {
  Scenario sc = overhead_scenario(delta6, 200.0, 0.0, duration, 1000.0);
  RunOptions opts;
  opts.collect_bins = true;
  RunResult r = run(sc, opts);

  // Direction 1 of link 0 carries the measured flow (higher node id to
  // lower: the ramp source is node B).
  std::vector<OverheadPoint> out;
  const auto& bins = r.metrics.link_bins[0][1];
  for (size_t s = 0; s < bins.size(); ++s) {
    OverheadPoint p;
    p.second = static_cast<int>(s);
    p.data = bins[s].data + bins[s].hb_req;  // requests are relabeled data
    p.hb_reply = bins[s].hb_reply;
    p.total = bins[s].data + bins[s].hb_req + bins[s].hb_reply + bins[s].probe;
    out.push_back(p);
  }
  return out;
}

uint64_t reorder_check(const Scenario& sc) {
  RunResult r = run(sc);
  return r.metrics.total_out_of_order();
}

ReorderResult reorder_suite(TimeNs delta1, double rate, int seeds,
                            uint64_t seed0, bool parallel) {
  ReorderResult res;
  res.per_seed.assign(seeds, 0);

  auto one = [&](int k) {
    std::mt19937_64 rng(mix64(seed0 ^ uint64_t(k)));
    std::uniform_real_distribution<double> u(0.2, 0.4);
    TimeNs fail_at = from_sec(u(rng));
    Scenario sc = chain_scenario(rate, fail_at, kNoTimeout,
                                 mix64(seed0 + 1000 + k));
    if (delta1 >= 0) {
      sc.timeouts.delta1 = delta1;
      sc.timeouts.delta2 = std::max<TimeNs>(2 * delta1, us(1));
    }
    sc.duration = fail_at + ms(600);
    return reorder_check(sc);
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < seeds; ++k) res.per_seed[k] = one(k);
  } else {
    for (int k = 0; k < seeds; ++k) res.per_seed[k] = one(k);
  }

  for (uint64_t v : res.per_seed) {
    res.total += v;
    if (v > 0) res.seeds_with_reordering++;
  }
  return res;
}

std::vector<ComparePoint> compare_sweep(int max_demands,
                                        const std::vector<TimeNs>& rtts,
                                        int tries, uint64_t seed,
                                        bool parallel) {
  std::mt19937_64 rng(mix64(seed));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> fractions(std::max(tries, 1));
  for (double& f : fractions) f = u(rng);

  struct Job {
    size_t point;
    int m;
    int try_idx;
    bool spider;
    TimeNs rtt;
  };
  std::vector<ComparePoint> points;
  std::vector<Job> jobs;
  for (int m = 1; m <= max_demands; ++m) {
    for (TimeNs rtt : rtts) {
      ComparePoint p;
      p.demands = m;
      p.rtt = rtt;
      p.spider = false;
      for (int k = 0; k < tries; ++k)
        jobs.push_back({points.size(), m, k, false, rtt});
      points.push_back(p);
    }
    ComparePoint p;
    p.demands = m;
    p.spider = true;
    for (int k = 0; k < tries; ++k)
      jobs.push_back({points.size(), m, k, true, 0});
    points.push_back(p);
  }

  std::vector<std::vector<double>> samples(points.size());
  for (size_t i = 0; i < points.size(); ++i) samples[i].resize(tries, 0);

  const TimeNs warm = sec(1);
  auto run_job = [&](const Job& jb) {
    TimeNs d6 = ms(2);
    TimeNs offset = static_cast<TimeNs>(fractions[jb.try_idx] * double(d6));
    uint64_t s = mix64(seed ^ (uint64_t(jb.m) << 32) ^
                       (uint64_t(jb.try_idx) << 16) ^ (jb.spider ? 1 : 0) ^
                       uint64_t(jb.rtt));
    if (jb.spider) {
      Scenario sc = compare_scenario(jb.m, Mode::SPIDER, 0, warm, s);
      sc.faults.back().offset = offset;
      RunResult r = run(sc);
      return double(r.metrics.total_lost());
    }
    Scenario sc =
        compare_scenario(jb.m, Mode::BASELINE, jb.rtt, warm + offset, s);
    RunResult r = run(sc);
    return double(r.metrics.total_lost());
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < jobs.size(); ++i)
      samples[jobs[i].point][jobs[i].try_idx] = run_job(jobs[i]);
  } else {
    for (size_t i = 0; i < jobs.size(); ++i)
      samples[jobs[i].point][jobs[i].try_idx] = run_job(jobs[i]);
  }

  for (size_t i = 0; i < points.size(); ++i) {
    double sum = 0;
    for (double v : samples[i]) sum += v;
    points[i].mean_lost = tries > 0 ? sum / tries : 0;
  }
  return points;
}

}  // namespace spider
