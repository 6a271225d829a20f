#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dynseg/graph.hpp"

namespace dynseg {

enum class Metric { node, link, neighbor, gamma };

const char* metric_name(Metric m);
Metric metric_from_name(std::string_view name);  // InvalidMetric on unknown

struct PairScore {
  Interval prev_interval;
  Interval next_interval;
  Metric metric = Metric::node;
  double score = 0.0;
};

struct SimilaritySeries {
  std::int64_t epsilon = 0;
  Metric metric = Metric::node;
  std::vector<PairScore> scores;  // one per consecutive snapshot pair
};

// Jaccard similarity of the two node sets. Two empty sets count as
// unchanged (1.0).
double node_similarity(const Snapshot& prev, const Snapshot& next);

// Jaccard similarity of the two link sets under canonical link encoding.
double link_similarity(const Snapshot& prev, const Snapshot& next);

// Jaccard similarity of v's neighborhoods. v must belong to both node sets
// (NotCommonNode otherwise); two empty neighborhoods count as unchanged.
double neighbor_stability(NodeId v, const Snapshot& prev, const Snapshot& next);

// Mean neighbor stability over the common node set; 0.0 when no nodes are
// common (no evidence of stability).
double neighborhood_similarity(const Snapshot& prev, const Snapshot& next);

// Pearson correlation between the two link indicator vectors over all
// unordered pairs of the united node set. Computed from set sizes alone,
// never by materializing the O(|V|^2) vectors. Returns 0.0 whenever either
// vector is constant (no links, complete graph, or union of < 2 nodes).
double adjacency_correlation(const Snapshot& prev, const Snapshot& next);

double score_pair(Metric metric, const Snapshot& prev, const Snapshot& next);

// Scores for every consecutive pair, in order. TooFewSnapshots when the
// network has < 2 snapshots. The parallel version evaluates pairs with
// OpenMP and produces output identical to the serial reference.
SimilaritySeries series(const DynamicNetwork& net, Metric metric);

namespace serial {
SimilaritySeries series(const DynamicNetwork& net, Metric metric);
}

}  // namespace dynseg
