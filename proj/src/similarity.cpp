#include "dynseg/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dynseg {

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::node: return "node";
    case Metric::link: return "link";
    case Metric::neighbor: return "neighbor";
    case Metric::gamma: return "gamma";
  }
  return "?";
}

Metric metric_from_name(std::string_view name) {
  if (name == "node") return Metric::node;
  if (name == "link") return Metric::link;
  if (name == "neighbor") return Metric::neighbor;
  if (name == "gamma") return Metric::gamma;
  fail(Errc::invalid_metric, std::string(name));
}

namespace {

template <typename It>
std::size_t intersection_size(It a, It a_end, It b, It b_end) {
  std::size_t n = 0;
  while (a != a_end && b != b_end) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++n;
      ++a;
      ++b;
    }
  }
  return n;
}

double jaccard(std::size_t common, std::size_t size_a, std::size_t size_b) {
  const std::size_t united = size_a + size_b - common;
  if (united == 0) return 1.0;  // two empty sets: unchanged
  return static_cast<double>(common) / static_cast<double>(united);
}

}  // namespace

double node_similarity(const Snapshot& prev, const Snapshot& next) {
  const auto& a = prev.nodes();
  const auto& b = next.nodes();
  return jaccard(intersection_size(a.begin(), a.end(), b.begin(), b.end()),
                 a.size(), b.size());
}

double link_similarity(const Snapshot& prev, const Snapshot& next) {
  const auto& a = prev.links();
  const auto& b = next.links();
  return jaccard(intersection_size(a.begin(), a.end(), b.begin(), b.end()),
                 a.size(), b.size());
}

double neighbor_stability(NodeId v, const Snapshot& prev, const Snapshot& next) {
  if (!prev.has_node(v) || !next.has_node(v))
    fail(Errc::not_common_node,
         "node " + std::to_string(v) + " must appear in both snapshots");
  auto a = prev.neighbors(v);
  auto b = next.neighbors(v);
  return jaccard(intersection_size(a.begin(), a.end(), b.begin(), b.end()),
                 a.size(), b.size());
}

double neighborhood_similarity(const Snapshot& prev, const Snapshot& next) {
  const auto& va = prev.nodes();
  const auto& vb = next.nodes();
  std::vector<double> stabilities;
  std::size_t i = 0, j = 0;
  while (i < va.size() && j < vb.size()) {
    if (va[i] < vb[j]) {
      ++i;
    } else if (vb[j] < va[i]) {
      ++j;
    } else {
      auto na = prev.neighbors_at(i);
      auto nb = next.neighbors_at(j);
      stabilities.push_back(
          jaccard(intersection_size(na.begin(), na.end(), nb.begin(), nb.end()),
                  na.size(), nb.size()));
      ++i;
      ++j;
    }
  }
  if (stabilities.empty()) return 0.0;
  // Summed in value order so the mean does not depend on node label order.
  std::sort(stabilities.begin(), stabilities.end());
  double sum = 0.0;
  for (double s : stabilities) sum += s;
  return sum / static_cast<double>(stabilities.size());
}

double adjacency_correlation(const Snapshot& prev, const Snapshot& next) {
  const auto& va = prev.nodes();
  const auto& vb = next.nodes();
  const std::size_t common_nodes =
      intersection_size(va.begin(), va.end(), vb.begin(), vb.end());
  const std::int64_t united = static_cast<std::int64_t>(va.size() + vb.size() - common_nodes);
  const std::int64_t pairs = united * (united - 1) / 2;

  const std::int64_t n1 = static_cast<std::int64_t>(prev.links().size());
  const std::int64_t n2 = static_cast<std::int64_t>(next.links().size());
  if (pairs == 0 || n1 == 0 || n2 == 0 || n1 == pairs || n2 == pairs)
    return 0.0;  // constant indicator vector

  const auto& la = prev.links();
  const auto& lb = next.links();
  const std::int64_t n12 = static_cast<std::int64_t>(
      intersection_size(la.begin(), la.end(), lb.begin(), lb.end()));
  if (n1 == n2 && n12 == n1) return 1.0;  // identical link sets

  const long double num = static_cast<long double>(pairs) * n12 -
                          static_cast<long double>(n1) * n2;
  const long double var1 = static_cast<long double>(n1) * (pairs - n1);
  const long double var2 = static_cast<long double>(n2) * (pairs - n2);
  return static_cast<double>(num / std::sqrt(var1 * var2));
}

double score_pair(Metric metric, const Snapshot& prev, const Snapshot& next) {
  switch (metric) {
    case Metric::node: return node_similarity(prev, next);
    case Metric::link: return link_similarity(prev, next);
    case Metric::neighbor: return neighborhood_similarity(prev, next);
    case Metric::gamma: return adjacency_correlation(prev, next);
  }
  fail(Errc::invalid_metric, "unknown metric");
}

namespace {

SimilaritySeries make_series(const DynamicNetwork& net, Metric metric) {
  if (net.snapshots.size() < 2)
    fail(Errc::too_few_snapshots, "similarity series needs >= 2 snapshots");
  SimilaritySeries out;
  out.epsilon = net.epsilon;
  out.metric = metric;
  out.scores.resize(net.snapshots.size() - 1);
  return out;
}

}  // namespace

SimilaritySeries series(const DynamicNetwork& net, Metric metric) {
  SimilaritySeries out = make_series(net, metric);
  const std::int64_t n = static_cast<std::int64_t>(out.scores.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const Snapshot& prev = net.snapshots[i];
    const Snapshot& next = net.snapshots[i + 1];
    out.scores[i] = PairScore{prev.interval(), next.interval(), metric,
                              score_pair(metric, prev, next)};
  }
  return out;
}

namespace serial {

SimilaritySeries series(const DynamicNetwork& net, Metric metric) {
  SimilaritySeries out = make_series(net, metric);
  for (std::size_t i = 0; i < out.scores.size(); ++i) {
    const Snapshot& prev = net.snapshots[i];
    const Snapshot& next = net.snapshots[i + 1];
    out.scores[i] = PairScore{prev.interval(), next.interval(), metric,
                              score_pair(metric, prev, next)};
  }
  return out;
}

}  // namespace serial

}  // namespace dynseg
