#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynseg/ingest.hpp"
#include "dynseg/nullmodel.hpp"
#include "dynseg/similarity.hpp"

namespace dynseg {

enum class SegmentMode { consecutive, aggregate };

const char* segment_mode_name(SegmentMode m);

struct SegmentationConfig {
  std::int64_t epsilon = 0;
  // Only node and link carry a null threshold; neighbor and gamma are
  // reported alongside but never drive cuts.
  Metric metric = Metric::link;
  double alpha = 0.05;
  // consecutive: compare each epsilon-snapshot with the next.
  // aggregate: compare the running aggregate of the current segment with the
  // next epsilon-snapshot, which keeps slow drift detectable.
  SegmentMode mode = SegmentMode::consecutive;
  bool strict_colocation = false;
};

// One consecutive-pair record of the segmentation trail. In aggregate mode
// prev_interval spans the running segment aggregate.
struct PairAssessment {
  Interval prev_interval;
  Interval next_interval;
  double s_node = 0.0;
  double s_link = 0.0;
  double s_neighbor = 0.0;
  double gamma = 0.0;
  NullAssessment null_assessment;  // on the configured metric's sets
  bool cut = false;                // final verdict used by the scan
  std::string warning;             // empty when none
};

struct SegmentationResult {
  std::int64_t epsilon = 0;
  Interval span;
  // Longest stable durations, each a positive multiple of epsilon. A final
  // ragged tile shorter than epsilon is accounted separately so that
  // sum(durations) + ragged_tail == span duration.
  std::vector<std::int64_t> durations;
  std::int64_t ragged_tail = 0;
  std::vector<std::int64_t> cut_points;  // segment boundaries, strictly increasing
  DynamicNetwork proper_network;         // one aggregate snapshot per stable run
  std::vector<PairAssessment> assessments;
};

// Scans the epsilon tiling of the log span and closes a segment wherever the
// null model declares the pair overlap significantly small. SpanTooShort
// when the span holds fewer than two epsilon windows.
SegmentationResult segment(const EventLog& log, const SegmentationConfig& cfg);

// Same scan over an already-extracted network; useful for synthetic inputs.
SegmentationResult segment_network(const DynamicNetwork& net,
                                   const SegmentationConfig& cfg);

namespace serial {
// Reference path with the consecutive-mode pair assessments evaluated
// sequentially instead of over OpenMP threads.
SegmentationResult segment_network(const DynamicNetwork& net,
                                   const SegmentationConfig& cfg);
}

}  // namespace dynseg
