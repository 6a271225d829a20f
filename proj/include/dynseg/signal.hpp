#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dynseg/ingest.hpp"
#include "dynseg/similarity.hpp"

namespace dynseg {

// Noise and diversity statistics of one similarity series.
struct SeriesStats {
  double variance = 0.0;                     // population variance
  std::optional<double> normalized_std;      // sigma / mean, absent when mean == 0
  double string_diversity = 0.0;             // runs / tokens after quantization
  double non_repetition = 0.0;               // distinct tokens / tokens
  double mean = 0.0;
  std::size_t length = 0;
};

double variance(std::span<const double> series);        // EmptySeries on length 0
double normalized_std(std::span<const double> series);  // ZeroMean when mean == 0

// Rounds each value half-up to `decimals` places and assigns one token per
// distinct rounded value, in order of first appearance.
std::vector<std::uint32_t> quantize(std::span<const double> series, int decimals);

// Compression ratios of the quantized series: maximal equal-token runs over
// length, and distinct tokens over length. Both lie in (0, 1].
double string_diversity(std::span<const double> series, int decimals);
double non_repetition(std::span<const double> series, int decimals);

SeriesStats series_stats(std::span<const double> series, int decimals);

struct StatsRow {
  std::int64_t epsilon = 0;
  Metric metric = Metric::node;
  SeriesStats stats;
  // Advisory pick per metric: the epsilon maximizing string_diversity among
  // those whose variance is at most the cross-epsilon median.
  bool recommended = false;
};

std::vector<StatsRow> stats_for_epsilons(const EventLog& log,
                                         std::span<const std::int64_t> epsilons,
                                         std::span<const Metric> metrics,
                                         int decimals,
                                         const ExtractOptions& opts = {});

}  // namespace dynseg
