#include "dynseg/segment.hpp"

#include <algorithm>
#include <string>

namespace dynseg {

const char* segment_mode_name(SegmentMode m) {
  return m == SegmentMode::consecutive ? "consecutive" : "aggregate";
}

namespace {

struct SetPair {
  std::int64_t size_a = 0;
  std::int64_t size_b = 0;
  std::int64_t common = 0;
};

std::int64_t sorted_common(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { ++n; ++i; ++j; }
  }
  return static_cast<std::int64_t>(n);
}

std::int64_t sorted_common(const std::vector<Link>& a, const std::vector<Link>& b) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { ++n; ++i; ++j; }
  }
  return static_cast<std::int64_t>(n);
}

SetPair metric_sets(Metric metric, const Snapshot& prev, const Snapshot& next) {
  SetPair sp;
  if (metric == Metric::node) {
    sp.size_a = static_cast<std::int64_t>(prev.nodes().size());
    sp.size_b = static_cast<std::int64_t>(next.nodes().size());
    sp.common = sorted_common(prev.nodes(), next.nodes());
  } else {
    sp.size_a = static_cast<std::int64_t>(prev.links().size());
    sp.size_b = static_cast<std::int64_t>(next.links().size());
    sp.common = sorted_common(prev.links(), next.links());
  }
  return sp;
}

// Raw null-model verdict plus the degenerate-set policy: both sets empty is
// a stable pair; for the link metric a transition between an empty and a
// populated link set counts as a change when the populated size could ever
// reach significance; pairs without a critical value never cut.
PairAssessment assess(const NullModel& model, const SegmentationConfig& cfg,
                      const Snapshot& prev, const Snapshot& next) {
  PairAssessment pa;
  pa.prev_interval = prev.interval();
  pa.next_interval = next.interval();
  pa.s_node = node_similarity(prev, next);
  pa.s_link = link_similarity(prev, next);
  pa.s_neighbor = neighborhood_similarity(prev, next);
  pa.gamma = adjacency_correlation(prev, next);

  const SetPair sp = metric_sets(cfg.metric, prev, next);
  pa.null_assessment = model.assess_pair(sp.size_a, sp.size_b, sp.common, cfg.alpha);
  pa.cut = pa.null_assessment.significant_change;

  if (sp.size_a == 0 && sp.size_b == 0) {
    pa.cut = false;  // empty system is stable
    return pa;
  }
  if (cfg.metric == Metric::link && (sp.size_a == 0 || sp.size_b == 0)) {
    const std::int64_t populated = std::max(sp.size_a, sp.size_b);
    if (model.critical_common(populated, populated, cfg.alpha)) {
      pa.cut = true;
    } else {
      pa.cut = false;
      pa.warning = "one link set empty and the other too small for alpha";
    }
    return pa;
  }
  if (!pa.null_assessment.critical_common)
    pa.warning = "sets too small for alpha; pair kept";
  return pa;
}

std::int64_t max_metric_total(const DynamicNetwork& net, Metric metric) {
  std::int64_t largest = 0;
  for (const Snapshot& s : net.snapshots) {
    const std::int64_t size = metric == Metric::node
                                  ? static_cast<std::int64_t>(s.nodes().size())
                                  : static_cast<std::int64_t>(s.links().size());
    largest = std::max(largest, size);
  }
  return largest;
}

}  // namespace

namespace {

SegmentationResult segment_network_impl(const DynamicNetwork& net,
                                        const SegmentationConfig& cfg,
                                        bool parallel_pairs) {
  if (cfg.metric != Metric::node && cfg.metric != Metric::link)
    fail(Errc::invalid_metric,
         "segmentation requires the node or link metric (the others have no "
         "null threshold)");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    fail(Errc::invalid_alpha, "alpha must lie in (0,1)");
  if (net.span.duration() < 2 * net.epsilon)
    fail(Errc::span_too_short, "span must cover at least two epsilon windows");
  const std::size_t tiles = net.snapshots.size();

  SegmentationResult result;
  result.epsilon = net.epsilon;
  result.span = net.span;
  result.assessments.resize(tiles - 1);

  // In aggregate mode the left side of each comparison depends on every cut
  // decision before it, so the whole scan is sequential. In consecutive mode
  // the pair verdicts are independent and precomputed in parallel; the
  // boundary scan afterwards stays sequential and deterministic.
  NullModel model(2 * max_metric_total(net, cfg.metric));
  std::vector<std::size_t> segment_starts{0};

  if (cfg.mode == SegmentMode::consecutive) {
    const std::int64_t pairs = static_cast<std::int64_t>(tiles) - 1;
#pragma omp parallel for schedule(dynamic, 8) if (parallel_pairs)
    for (std::int64_t i = 0; i < pairs; ++i)
      result.assessments[i] = assess(model, cfg, net.snapshots[i], net.snapshots[i + 1]);
    for (std::size_t i = 0; i + 1 < tiles; ++i)
      if (result.assessments[i].cut) segment_starts.push_back(i + 1);
  } else {
    Snapshot running = net.snapshots[0];
    for (std::size_t i = 0; i + 1 < tiles; ++i) {
      const Snapshot& next = net.snapshots[i + 1];
      result.assessments[i] = assess(model, cfg, running, next);
      if (result.assessments[i].cut) {
        segment_starts.push_back(i + 1);
        running = next;
      } else {
        const Snapshot parts[] = {running, next};
        running = aggregate(parts);
      }
    }
  }

  for (std::size_t k = 0; k < segment_starts.size(); ++k) {
    const std::size_t begin = segment_starts[k];
    const std::size_t end = k + 1 < segment_starts.size() ? segment_starts[k + 1] : tiles;
    const std::span<const Snapshot> run(net.snapshots.data() + begin, end - begin);
    result.proper_network.snapshots.push_back(aggregate(run));
    if (begin > 0)
      result.cut_points.push_back(net.snapshots[begin].interval().start);

    std::int64_t full = 0;
    for (const Snapshot& s : run) {
      if (s.interval().duration() == net.epsilon)
        full += net.epsilon;
      else
        result.ragged_tail += s.interval().duration();
    }
    if (full > 0) result.durations.push_back(full);
  }
  result.proper_network.epsilon = net.epsilon;
  result.proper_network.span = net.span;
  return result;
}

}  // namespace

SegmentationResult segment_network(const DynamicNetwork& net,
                                   const SegmentationConfig& cfg) {
  return segment_network_impl(net, cfg, true);
}

namespace serial {

SegmentationResult segment_network(const DynamicNetwork& net,
                                   const SegmentationConfig& cfg) {
  return segment_network_impl(net, cfg, false);
}

}  // namespace serial

SegmentationResult segment(const EventLog& log, const SegmentationConfig& cfg) {
  if (cfg.epsilon <= 0) fail(Errc::invalid_epsilon, "epsilon must be positive");
  if (log.span.duration() < 2 * cfg.epsilon)
    fail(Errc::span_too_short, "span must cover at least two epsilon windows");
  ExtractOptions opts;
  opts.strict_colocation = cfg.strict_colocation;
  return segment_network(extract(log, cfg.epsilon, opts), cfg);
}

}  // namespace dynseg
