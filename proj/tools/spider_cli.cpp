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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "spider/compiler/stats.hpp"
#include "spider/compiler/verify.hpp"
#include "spider/scenario_text.hpp"
#include "spider/simnet/sim.hpp"
#include "spider/simnet/sweeps.hpp"

namespace {

using namespace spider;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write to " + path);
  return out;
}

bool is_grid(const Topology& topo, int* n_out) {
  // Square lattices produced by the grid builder carry "r.c" names.
  size_t nodes = topo.node_count();
  int n = static_cast<int>(std::lround(std::sqrt(double(nodes))));
  if (static_cast<size_t>(n) * n != nodes || n < 3) return false;
  if (topo.find_node("0.0") == kNoNode ||
      topo.find_node(std::to_string(n - 1) + "." + std::to_string(n - 1)) ==
          kNoNode)
    return false;
  *n_out = n;
  return true;
}

int cmd_compile(const std::string& scenario_path, const std::string& rules_out,
                const std::string& counts_out) {
  Scenario sc = parse_scenario_file(scenario_path);
  std::vector<Demand> demands;
  for (const DemandSpec& d : sc.demands) demands.push_back(d.demand);
  std::vector<PathPlan> plans = plan_all(
      sc.topo, demands, ProtectionScheme::END_TO_END, sc.tie,
      sc.allow_unprotected);
  CompiledNetwork net = compile(sc.topo, std::move(plans), sc.timeouts);

  VerifyReport rep = verify_state_sizing(net);
  if (!rep.ok) {
    for (const std::string& s : rep.issues) std::cerr << "error: " << s << "\n";
    return kExitRuntime;
  }

  if (!rules_out.empty()) {
    std::ofstream out = open_out(rules_out);
    dump_config(net, out);
  }

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!counts_out.empty()) {
    file = open_out(counts_out);
    os = &file;
  }

  int n = 0;
  if (is_grid(net.topo, &n)) {
    GridStats forms = grid_closed_forms(n);
    uint64_t total = 0, mn = ~0ull, mx = 0;
    for (const SwitchConfig& cfg : net.configs) {
      uint64_t e = cfg.total_entries();
      total += e;
      mn = std::min(mn, e);
      mx = std::max(mx, e);
    }
    uint64_t avg = (total + net.configs.size() / 2) / net.configs.size();
    *os << "n,demands,edge,core,min,avg,max,e2n\n";
    *os << n << "," << forms.demands << "," << forms.edge_nodes << ","
        << forms.core_nodes << "," << mn << "," << avg << "," << mx << ","
        << forms.e2n << "\n";
  }
  *os << "node,table0,table1,table2,table3,total\n";
  for (const SwitchConfig& cfg : net.configs) {
    *os << net.topo.node(cfg.node).name;
    for (int t = 0; t < 4; ++t) *os << "," << cfg.entry_counts[t];
    *os << "," << cfg.total_entries() << "\n";
  }
  return kExitOk;
}

int cmd_run(const std::string& scenario_path, const std::string& log_out,
            const std::string& csv_out) {
  Scenario sc = parse_scenario_file(scenario_path);
  RunOptions opts;
  opts.collect_log = !log_out.empty();
  RunResult r = run(sc, opts);

  if (!log_out.empty()) {
    std::ofstream out = open_out(log_out);
    out << r.event_log;
  }
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!csv_out.empty()) {
    file = open_out(csv_out);
    os = &file;
  }
  *os << "src,dst,sent,delivered,lost,out_of_order,recovery_ms\n";
  for (size_t i = 0; i < sc.demands.size(); ++i) {
    const DemandMetrics& m = r.metrics.demands[i];
    *os << sc.topo.node(sc.demands[i].demand.src).name << ","
        << sc.topo.node(sc.demands[i].demand.dst).name << "," << m.sent << ","
        << m.delivered << "," << m.lost << "," << m.out_of_order << ",";
    if (m.recovery_time == kNoTimeout)
      *os << "-\n";
    else
      *os << to_ms(m.recovery_time) << "\n";
  }
  std::cout << "sent=" << r.metrics.total_sent()
            << " delivered=" << r.metrics.total_delivered()
            << " lost=" << r.metrics.total_lost()
            << " out_of_order=" << r.metrics.total_out_of_order()
            << " in_flight=" << r.metrics.in_flight
            << " ctrl_msgs=" << r.metrics.ctrl_msgs << "\n";
  return kExitOk;
}

int cmd_grid_stats(int from, int to, const std::string& out_path,
                   bool serial) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    os = &file;
  }
  *os << "n,demands,edge,core,min,avg,max,e2n\n";
  for (int n = from; n <= to; ++n) {
    GridStats s = grid_stats(n, TieBreak::SPREAD, !serial);
    *os << s.n << "," << s.demands << "," << s.edge_nodes << ","
        << s.core_nodes << "," << s.min_entries << "," << s.avg_entries << ","
        << s.max_entries << "," << s.e2n << "\n";
    os->flush();
  }
  return kExitOk;
}

int cmd_sweep_loss(double rate, int tries, uint64_t seed,
                   const std::string& out_path, bool serial) {
  std::vector<TimeNs> d6s = {ms(1000), ms(500), ms(250), ms(125), ms(63),
                             ms(32),   ms(16),  ms(8),   ms(4),   ms(2),
                             ms(1)};
  std::vector<TimeNs> d7s = {ms(100), ms(50), ms(25), ms(10)};
  auto cells = loss_sweep(d6s, d7s, rate, tries, seed, !serial);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    os = &file;
  }
  *os << "delta6_ms,delta7_ms,mean_lost\n";
  for (const LossCell& c : cells)
    *os << to_ms(c.delta6) << "," << to_ms(c.delta7) << "," << c.mean_lost
        << "\n";
  return kExitOk;
}

int cmd_sweep_overhead(double hb_rate, const std::string& out_path) {
  TimeNs d6 = from_sec(1.0 / hb_rate);
  auto points = overhead_run(d6, sec(100));
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    os = &file;
  }
  *os << "sec,data,hb_reply,total\n";
  for (const OverheadPoint& p : points)
    *os << p.second << "," << p.data << "," << p.hb_reply << "," << p.total
        << "\n";
  return kExitOk;
}

int cmd_sweep_compare(int max_demands, int tries, uint64_t seed,
                      const std::string& out_path, bool serial) {
  std::vector<TimeNs> rtts = {ms(0), ms(3), ms(6), ms(12)};
  auto points = compare_sweep(max_demands, rtts, tries, seed, !serial);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    os = &file;
  }
  *os << "demands,mode,rtt_ms,mean_lost\n";
  for (const ComparePoint& p : points) {
    if (p.spider)
      *os << p.demands << ",spider,-," << p.mean_lost << "\n";
    else
      *os << p.demands << ",of," << to_ms(p.rtt) << "," << p.mean_lost << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stateful fast-reroute pipeline compiler and simulator"};
  app.require_subcommand(1);

  std::string scenario_path, rules_out, counts_out, log_out, csv_out, out_path;
  bool serial = false;
  uint64_t seed = 1;
  int tries = 10;
  double rate = 1000;
  double hb_rate = 100;
  int max_demands = 35;
  int grid_from = 5, grid_to = 15;

  CLI::App* c = app.add_subcommand("compile",
                                   "compile a scenario into switch tables");
  c->add_option("scenario", scenario_path, "scenario file")->required();
  c->add_option("--rules", rules_out, "write the flow-entry dump here");
  c->add_option("--counts", counts_out, "write the entry-count CSV here");

  CLI::App* r = app.add_subcommand("run", "simulate one scenario");
  r->add_option("scenario", scenario_path, "scenario file")->required();
  r->add_option("--log", log_out, "write the event log here");
  r->add_option("--csv", csv_out, "write per-demand metrics here");

  CLI::App* g = app.add_subcommand("grid-stats",
                                   "entry-count table over square grids");
  g->add_option("--from", grid_from, "first grid size");
  g->add_option("--to", grid_to, "last grid size");
  g->add_option("--out", out_path, "output CSV path");
  g->add_flag("--serial", serial, "disable the OpenMP fan-out");

  CLI::App* s = app.add_subcommand("sweep", "canned experiment sweeps");
  s->require_subcommand(1);
  CLI::App* sl = s->add_subcommand("loss", "loss vs heartbeat timeouts");
  sl->add_option("--rate", rate, "traffic rate in pkt/s");
  sl->add_option("--tries", tries, "random failure phases per point");
  sl->add_option("--seed", seed, "random seed");
  sl->add_option("--out", out_path, "output CSV path");
  sl->add_flag("--serial", serial, "disable the OpenMP fan-out");
  CLI::App* so = s->add_subcommand("overhead", "heartbeat overhead vs load");
  so->add_option("--hb-rate", hb_rate, "heartbeat request rate (1/delta6)");
  so->add_option("--out", out_path, "output CSV path");
  CLI::App* sx = s->add_subcommand("compare", "protected vs reactive losses");
  sx->add_option("--max-demands", max_demands, "largest demand count");
  sx->add_option("--tries", tries, "random failure phases per point");
  sx->add_option("--seed", seed, "random seed");
  sx->add_option("--out", out_path, "output CSV path");
  sx->add_flag("--serial", serial, "disable the OpenMP fan-out");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c))
      return cmd_compile(scenario_path, rules_out, counts_out);
    if (app.got_subcommand(r)) return cmd_run(scenario_path, log_out, csv_out);
    if (app.got_subcommand(g))
      return cmd_grid_stats(grid_from, grid_to, out_path, serial);
    if (app.got_subcommand(s)) {
      if (s->got_subcommand(sl))
        return cmd_sweep_loss(rate, tries, seed, out_path, serial);
      if (s->got_subcommand(so)) return cmd_sweep_overhead(hb_rate, out_path);
      if (s->got_subcommand(sx))
        return cmd_sweep_compare(max_demands, tries, seed, out_path, serial);
    }
  } catch (const spider::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
