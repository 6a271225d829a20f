#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "dynseg/segment.hpp"
#include "dynseg/signal.hpp"
#include "dynseg/topology.hpp"

namespace dynseg::io {

enum class Emit { csv, json };

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// Writes via a sibling temp file and rename, so readers never observe a
// partial file.
void write_atomic(const std::string& path, const std::string& content);

struct SimilarityRow {
  std::int64_t epsilon = 0;
  std::int64_t prev_start = 0;
  std::int64_t next_start = 0;
  Metric metric = Metric::node;
  double score = 0.0;
  // Populated for node/link only; the other metrics have no null threshold.
  std::optional<double> threshold_jaccard;
  std::optional<bool> significant;
};

struct TopologyOutRow {
  std::int64_t epsilon = 0;
  TopologyRow row;
};

std::string render_inventory(std::span<const DynamicNetwork> nets, Emit emit);
std::string render_similarity(std::span<const SimilarityRow> rows, Emit emit);
std::string render_stats(std::span<const StatsRow> rows, Emit emit);
std::string render_topology(std::span<const TopologyOutRow> rows, Emit emit);
std::string render_segmentation(std::span<const SegmentationResult> results, Emit emit);

}  // namespace dynseg::io
