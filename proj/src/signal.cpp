#include "dynseg/signal.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace dynseg {

double variance(std::span<const double> series) {
  if (series.empty()) fail(Errc::empty_series, "variance of empty series");
  // Constant series short-circuit to an exact zero instead of picking up
  // rounding residue from the mean.
  if (std::all_of(series.begin(), series.end(),
                  [&](double v) { return v == series.front(); }))
    return 0.0;
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(series.size());
  double acc = 0.0;
  for (double v : series) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(series.size());
}

double normalized_std(std::span<const double> series) {
  if (series.empty()) fail(Errc::empty_series, "normalized std of empty series");
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(series.size());
  if (mean == 0.0) fail(Errc::zero_mean, "series mean is zero");
  return std::sqrt(variance(series)) / mean;
}

std::vector<std::uint32_t> quantize(std::span<const double> series, int decimals) {
  const double scale = std::pow(10.0, decimals);
  std::vector<std::uint32_t> tokens;
  tokens.reserve(series.size());
  std::unordered_map<std::int64_t, std::uint32_t> seen;
  for (double v : series) {
    const std::int64_t rounded =
        static_cast<std::int64_t>(std::floor(v * scale + 0.5));  // half-up
    auto [it, inserted] = seen.emplace(rounded, static_cast<std::uint32_t>(seen.size()));
    tokens.push_back(it->second);
  }
  return tokens;
}

double string_diversity(std::span<const double> series, int decimals) {
  if (series.empty()) fail(Errc::empty_series, "string diversity of empty series");
  const auto tokens = quantize(series, decimals);
  std::size_t runs = 1;
  for (std::size_t i = 1; i < tokens.size(); ++i)
    if (tokens[i] != tokens[i - 1]) ++runs;
  return static_cast<double>(runs) / static_cast<double>(tokens.size());
}

double non_repetition(std::span<const double> series, int decimals) {
  if (series.empty()) fail(Errc::empty_series, "non-repetition of empty series");
  const auto tokens = quantize(series, decimals);
  // Token ids are assigned densely in first-appearance order, so the number
  // of distinct tokens is max id + 1.
  const std::uint32_t distinct = *std::max_element(tokens.begin(), tokens.end()) + 1;
  return static_cast<double>(distinct) / static_cast<double>(tokens.size());
}

SeriesStats series_stats(std::span<const double> series, int decimals) {
  SeriesStats out;
  out.length = series.size();
  out.variance = variance(series);
  double mean = 0.0;
  for (double v : series) mean += v;
  out.mean = mean / static_cast<double>(series.size());
  if (out.mean != 0.0) out.normalized_std = std::sqrt(out.variance) / out.mean;
  out.string_diversity = string_diversity(series, decimals);
  out.non_repetition = non_repetition(series, decimals);
  return out;
}

std::vector<StatsRow> stats_for_epsilons(const EventLog& log,
                                         std::span<const std::int64_t> epsilons,
                                         std::span<const Metric> metrics,
                                         int decimals,
                                         const ExtractOptions& opts) {
  if (epsilons.empty()) fail(Errc::invalid_epsilon, "need at least one epsilon");

  std::vector<StatsRow> rows;
  rows.reserve(epsilons.size() * metrics.size());
  for (std::int64_t eps : epsilons) {
    DynamicNetwork net = extract(log, eps, opts);
    for (Metric m : metrics) {
      SimilaritySeries sim = series(net, m);
      std::vector<double> values;
      values.reserve(sim.scores.size());
      for (const PairScore& p : sim.scores) values.push_back(p.score);
      rows.push_back(StatsRow{eps, m, series_stats(values, decimals), false});
    }
  }

  // Advisory ranking, per metric: restrict to epsilons whose variance is at
  // most the cross-epsilon median, then pick the largest string_diversity
  // (smallest epsilon on ties).
  for (Metric m : metrics) {
    std::vector<std::size_t> group;
    std::vector<double> variances;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].metric == m) {
        group.push_back(i);
        variances.push_back(rows[i].stats.variance);
      }
    }
    if (group.empty()) continue;
    std::vector<double> sorted = variances;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = n % 2 == 1 ? sorted[n / 2]
                                     : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    std::size_t best = rows.size();
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (variances[k] > median) continue;
      if (best == rows.size() ||
          rows[group[k]].stats.string_diversity > rows[best].stats.string_diversity)
        best = group[k];
    }
    if (best != rows.size()) rows[best].recommended = true;
  }
  return rows;
}

}  // namespace dynseg
