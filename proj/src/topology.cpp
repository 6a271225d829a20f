#include "dynseg/topology.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace dynseg {

namespace {

// Position-indexed adjacency: node ids translated to indices into the
// snapshot's sorted node vector, so BFS runs on dense ints.
std::vector<std::vector<std::uint32_t>> position_adjacency(const Snapshot& s) {
  const std::size_t n = s.nodes().size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    auto nbrs = s.neighbors_at(pos);
    adj[pos].reserve(nbrs.size());
    for (NodeId v : nbrs)
      adj[pos].push_back(static_cast<std::uint32_t>(s.node_pos(v)));
  }
  return adj;
}

// BFS from `source`; returns (sum of distances to reached nodes, eccentricity).
std::pair<std::uint64_t, std::uint32_t> bfs_distances(
    const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t source,
    std::vector<std::uint32_t>& dist_scratch) {
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::fill(dist_scratch.begin(), dist_scratch.end(), kUnseen);
  std::queue<std::uint32_t> frontier;
  dist_scratch[source] = 0;
  frontier.push(source);
  std::uint64_t sum = 0;
  std::uint32_t ecc = 0;
  while (!frontier.empty()) {
    std::uint32_t u = frontier.front();
    frontier.pop();
    for (std::uint32_t v : adj[u]) {
      if (dist_scratch[v] != kUnseen) continue;
      dist_scratch[v] = dist_scratch[u] + 1;
      sum += dist_scratch[v];
      ecc = std::max(ecc, dist_scratch[v]);
      frontier.push(v);
    }
  }
  return {sum, ecc};
}

}  // namespace

TopologyRow topology_row(const Snapshot& s, const TopologyOptions& opts) {
  TopologyRow row;
  row.interval = s.interval();
  row.node_count = s.nodes().size();
  row.link_count = s.links().size();
  const double v = static_cast<double>(row.node_count);
  const double l = static_cast<double>(row.link_count);
  if (row.node_count >= 2) row.density = 2.0 * l / (v * (v - 1.0));
  if (row.node_count >= 1) row.average_degree = 2.0 * l / v;
  if (row.node_count == 0) return row;

  const auto adj = position_adjacency(s);
  const std::size_t n = adj.size();

  // Connected components; remember the largest (ties break to the component
  // seen first in sorted node order, keeping rows deterministic).
  std::vector<std::uint32_t> component(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> largest;
  std::uint32_t comp_count = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (component[start] != std::numeric_limits<std::uint32_t>::max()) continue;
    std::vector<std::uint32_t> members;
    stack.push_back(start);
    component[start] = comp_count;
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (std::uint32_t w : adj[u]) {
        if (component[w] != std::numeric_limits<std::uint32_t>::max()) continue;
        component[w] = comp_count;
        stack.push_back(w);
      }
    }
    if (members.size() > largest.size()) largest = std::move(members);
    ++comp_count;
  }
  row.components = comp_count;

  // Transitivity: per-link common-neighbor counts give 3 * triangles.
  std::uint64_t closed = 0;
  std::uint64_t triples = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::uint64_t deg = adj[pos].size();
    triples += deg * (deg - 1) / 2;
  }
  for (const Link& link : s.links()) {
    auto na = s.neighbors(link.a);
    auto nb = s.neighbors(link.b);
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
      if (na[i] < nb[j]) ++i;
      else if (nb[j] < na[i]) ++j;
      else { ++closed; ++i; ++j; }
    }
  }
  if (triples > 0)
    row.transitivity = static_cast<double>(closed) / static_cast<double>(triples);

  // Path metrics over the largest component.
  std::sort(largest.begin(), largest.end());
  const std::size_t cn = largest.size();
  if (cn < 2) return row;

  std::vector<std::uint32_t> sources;
  if (cn <= opts.exact_path_cap) {
    sources = largest;
  } else {
    row.approx_paths = true;
    const std::size_t count = std::min(opts.sample_sources, cn);
    sources.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
      sources.push_back(largest[i * cn / count]);  // evenly spaced, deterministic
  }

  std::uint64_t dist_sum = 0;
  std::uint32_t ecc_max = 0;
  std::vector<std::uint32_t> scratch(n);
  for (std::uint32_t src : sources) {
    auto [sum, ecc] = bfs_distances(adj, src, scratch);
    dist_sum += sum;
    ecc_max = std::max(ecc_max, ecc);
  }
  // dist_sum covers ordered (source, other) pairs.
  row.average_path_length = static_cast<double>(dist_sum) /
                            (static_cast<double>(sources.size()) *
                             static_cast<double>(cn - 1));
  row.diameter = ecc_max;
  return row;
}

std::vector<TopologyRow> topology_series(const DynamicNetwork& net,
                                         const TopologyOptions& opts) {
  std::vector<TopologyRow> rows(net.snapshots.size());
  const std::int64_t n = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i)
    rows[i] = topology_row(net.snapshots[i], opts);
  return rows;
}

namespace serial {

std::vector<TopologyRow> topology_series(const DynamicNetwork& net,
                                         const TopologyOptions& opts) {
  std::vector<TopologyRow> rows;
  rows.reserve(net.snapshots.size());
  for (const Snapshot& s : net.snapshots) rows.push_back(topology_row(s, opts));
  return rows;
}

}  // namespace serial

}  // namespace dynseg
