#pragma once

#include <cstdint>
#include <vector>

#include "dynseg/graph.hpp"

namespace dynseg {

// Per-snapshot topological property row. Path metrics (average path length,
// diameter) are computed on the largest connected component; empty and
// singleton components yield zeros.
struct TopologyRow {
  Interval interval;
  std::size_t node_count = 0;
  std::size_t link_count = 0;
  double density = 0.0;         // 2L / V(V-1), 0 when V < 2
  double average_degree = 0.0;  // 2L / V, 0 when V == 0
  std::size_t components = 0;
  double transitivity = 0.0;    // 3 * triangles / connected triples
  double average_path_length = 0.0;
  std::size_t diameter = 0;
  bool approx_paths = false;    // sampled-source BFS was used
};

struct TopologyOptions {
  // Components larger than this use sampled-source BFS for the path metrics
  // instead of all-pairs BFS; the row is flagged approx_paths.
  std::size_t exact_path_cap = 5000;
  std::size_t sample_sources = 256;  // evenly spaced over the component
};

TopologyRow topology_row(const Snapshot& s, const TopologyOptions& opts = {});

// One row per snapshot, in order. Rows are independent; the parallel version
// distributes snapshots over OpenMP threads and matches the serial reference.
std::vector<TopologyRow> topology_series(const DynamicNetwork& net,
                                         const TopologyOptions& opts = {});

namespace serial {
std::vector<TopologyRow> topology_series(const DynamicNetwork& net,
                                         const TopologyOptions& opts = {});
}

}  // namespace dynseg
