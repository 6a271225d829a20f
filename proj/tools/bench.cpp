// Benchmark of the OpenMP kernels against their serial reference paths on a
// synthetic dyadic log. Usage: dynseg_bench [nodes] [windows] [events_per_window]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dynseg/ingest.hpp"
#include "dynseg/segment.hpp"
#include "dynseg/similarity.hpp"
#include "dynseg/topology.hpp"

using namespace dynseg;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

EventLog synthetic_log(std::uint32_t nodes, int windows, int events_per_window) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<std::uint32_t> pick(0, nodes - 1);
  EventLog log;
  log.kind = LogKind::dyadic;
  const std::int64_t eps = 600;
  for (int w = 0; w < windows; ++w) {
    for (int e = 0; e < events_per_window; ++e) {
      DyadicRecord rec;
      rec.timestamp = w * eps + static_cast<std::int64_t>(e) % eps;
      rec.from = pick(rng);
      rec.to.push_back(pick(rng));
      log.dyads.push_back(std::move(rec));
    }
  }
  std::stable_sort(log.dyads.begin(), log.dyads.end(),
                   [](const DyadicRecord& x, const DyadicRecord& y) {
                     return x.timestamp < y.timestamp;
                   });
  // ids 0..nodes-1 in interner order, matching the ids used above
  for (std::uint32_t v = 0; v < nodes; ++v)
    log.actors.intern("n" + std::to_string(v));
  log.span = Interval{0, windows * eps};
  return log;
}

template <typename F>
double time_once(F&& fn) {
  auto t0 = clock_type::now();
  fn();
  return seconds_since(t0);
}

EventLog synthetic_sessions(std::uint32_t actors, int windows) {
  std::mt19937 rng(54321);
  const std::int64_t eps = 600;
  const std::int64_t span_end = windows * eps;
  std::uniform_int_distribution<std::int64_t> start(0, span_end - 1);
  std::uniform_int_distribution<std::int64_t> length(60, 4 * eps);
  std::uniform_int_distribution<std::uint32_t> where(0, 49);
  EventLog log;
  log.kind = LogKind::session;
  for (std::uint32_t a = 0; a < actors; ++a) {
    log.actors.intern("s" + std::to_string(a));
    for (int s = 0; s < 12; ++s) {
      SessionRecord rec;
      rec.actor = a;
      rec.location = where(rng);
      rec.connect = start(rng);
      rec.disconnect = std::min(span_end, *rec.connect + length(rng));
      log.sessions.push_back(rec);
    }
  }
  for (std::uint32_t l = 0; l < 50; ++l) log.locations.intern("ap" + std::to_string(l));
  log.span = Interval{0, span_end};
  return log;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint32_t nodes = argc > 1 ? std::atoi(argv[1]) : 400;
  const int windows = argc > 2 ? std::atoi(argv[2]) : 200;
  const int events = argc > 3 ? std::atoi(argv[3]) : 2000;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("log: %u nodes, %d windows, %d events/window\n\n", nodes, windows, events);

  EventLog log = synthetic_log(nodes, windows, events);
  const std::int64_t eps = 600;

  DynamicNetwork net_serial, net_parallel;
  const double t_extract_serial =
      time_once([&] { net_serial = serial::extract(log, eps, log.span, {}); });
  const double t_extract_parallel = time_once([&] { net_parallel = extract(log, eps); });
  std::printf("extract      serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n",
              t_extract_serial, t_extract_parallel,
              t_extract_serial / t_extract_parallel);

  SimilaritySeries sim_serial, sim_parallel;
  const double t_sim_serial =
      time_once([&] { sim_serial = serial::series(net_serial, Metric::neighbor); });
  const double t_sim_parallel =
      time_once([&] { sim_parallel = series(net_parallel, Metric::neighbor); });
  std::printf("similarity   serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n",
              t_sim_serial, t_sim_parallel, t_sim_serial / t_sim_parallel);

  std::vector<TopologyRow> topo_serial, topo_parallel;
  const double t_topo_serial =
      time_once([&] { topo_serial = serial::topology_series(net_serial); });
  const double t_topo_parallel =
      time_once([&] { topo_parallel = topology_series(net_parallel); });
  std::printf("topology     serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n",
              t_topo_serial, t_topo_parallel, t_topo_serial / t_topo_parallel);

  SegmentationConfig cfg;
  cfg.epsilon = eps;
  cfg.metric = Metric::link;
  SegmentationResult seg_serial, seg_parallel;
  const double t_seg_serial =
      time_once([&] { seg_serial = serial::segment_network(net_serial, cfg); });
  const double t_seg_parallel =
      time_once([&] { seg_parallel = segment_network(net_parallel, cfg); });
  std::printf("segment      serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n",
              t_seg_serial, t_seg_parallel, t_seg_serial / t_seg_parallel);

  EventLog sessions = synthetic_sessions(nodes, windows);
  DynamicNetwork wnet_serial, wnet_parallel;
  const double t_wap_serial =
      time_once([&] { wnet_serial = serial::extract(sessions, eps, sessions.span, {}); });
  const double t_wap_parallel = time_once([&] { wnet_parallel = extract(sessions, eps); });
  std::printf("extract/wap  serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n",
              t_wap_serial, t_wap_parallel, t_wap_serial / t_wap_parallel);

  // Parity check: the parallel paths must reproduce the serial output.
  bool ok = net_serial.snapshots.size() == net_parallel.snapshots.size() &&
            sim_serial.scores.size() == sim_parallel.scores.size() &&
            topo_serial.size() == topo_parallel.size() &&
            seg_serial.durations == seg_parallel.durations &&
            seg_serial.cut_points == seg_parallel.cut_points;
  if (ok) {
    for (std::size_t i = 0; i < sim_serial.scores.size(); ++i)
      ok = ok && sim_serial.scores[i].score == sim_parallel.scores[i].score;
    for (std::size_t i = 0; i < topo_serial.size(); ++i)
      ok = ok && topo_serial[i].average_path_length == topo_parallel[i].average_path_length &&
           topo_serial[i].diameter == topo_parallel[i].diameter;
    for (std::size_t i = 0; i < net_serial.snapshots.size(); ++i)
      ok = ok && net_serial.snapshots[i].links() == net_parallel.snapshots[i].links();
    ok = ok && wnet_serial.snapshots.size() == wnet_parallel.snapshots.size();
    for (std::size_t i = 0; i < wnet_serial.snapshots.size(); ++i)
      ok = ok && wnet_serial.snapshots[i].links() == wnet_parallel.snapshots[i].links();
  }
  std::printf("\nparity: %s\n", ok ? "serial and parallel outputs identical" : "MISMATCH");
  return ok ? 0 : 1;
}
