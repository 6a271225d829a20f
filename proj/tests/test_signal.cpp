#include <random>
#include <vector>

#include "doctest.h"
#include "dynseg/signal.hpp"

using namespace dynseg;

TEST_CASE("variance") {
  std::vector<double> constant{0.4, 0.4, 0.4};
  CHECK(variance(constant) == 0.0);
  std::vector<double> coin{0.0, 1.0};
  CHECK(variance(coin) == 0.25);
  std::vector<double> ramp{0.2, 0.4, 0.6};
  CHECK(variance(ramp) == doctest::Approx(0.08 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)variance(std::vector<double>{}), Error);
}

TEST_CASE("variance is invariant under time reversal") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::vector<double> series(17);
  for (double& v : series) v = value(rng);
  std::vector<double> reversed(series.rbegin(), series.rend());
  CHECK(variance(series) == variance(reversed));
}

TEST_CASE("normalized standard deviation") {
  std::vector<double> coin{0.0, 1.0};
  CHECK(normalized_std(coin) == 1.0);
  std::vector<double> constant{0.7, 0.7, 0.7};
  CHECK(normalized_std(constant) == 0.0);
  std::vector<double> zeros{0.0, 0.0};
  CHECK_THROWS_AS((void)normalized_std(zeros), Error);
}

TEST_CASE("normalized std is scale invariant") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> value(0.1, 1.0);
  std::uniform_real_distribution<double> factor(0.01, 100.0);
  for (int round = 0; round < 20; ++round) {
    std::vector<double> series(12);
    for (double& v : series) v = value(rng);
    const double k = factor(rng);
    std::vector<double> scaled = series;
    for (double& v : scaled) v *= k;
    CHECK(normalized_std(scaled) ==
          doctest::Approx(normalized_std(series)).epsilon(1e-12));
  }
}

TEST_CASE("quantization tokens") {
  std::vector<double> near{0.501, 0.499};
  auto tokens = quantize(near, 2);  // both round to 0.50
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0] == tokens[1]);

  std::vector<double> distinct{0.50, 0.72, 0.31};
  auto t3 = quantize(distinct, 2);
  CHECK(t3 == std::vector<std::uint32_t>{0, 1, 2});

  CHECK(quantize(std::vector<double>{}, 2).empty());
}

TEST_CASE("string diversity counts runs") {
  // AAABBC as values
  std::vector<double> aaabbc{0.1, 0.1, 0.1, 0.2, 0.2, 0.3};
  CHECK(string_diversity(aaabbc, 2) == 0.5);  // 3 runs / 6
  std::vector<double> constant(6, 0.4);
  CHECK(string_diversity(constant, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  std::vector<double> all_distinct{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  CHECK(string_diversity(all_distinct, 2) == 1.0);
}

TEST_CASE("non repetition counts distinct tokens") {
  // ABABAB: maximally diverse runs but only two values
  std::vector<double> ababab{0.1, 0.2, 0.1, 0.2, 0.1, 0.2};
  CHECK(non_repetition(ababab, 2) == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(string_diversity(ababab, 2) == 1.0);
  std::vector<double> constant(6, 0.4);
  CHECK(non_repetition(constant, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  std::vector<double> all_distinct{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  CHECK(non_repetition(all_distinct, 2) == 1.0);
}

TEST_CASE("diversity statistics depend only on run structure") {
  std::vector<double> a{0.1, 0.1, 0.3, 0.3, 0.9};
  std::vector<double> renamed{0.7, 0.7, 0.2, 0.2, 0.4};  // same run shape
  CHECK(string_diversity(a, 2) == string_diversity(renamed, 2));
  CHECK(non_repetition(a, 2) == non_repetition(renamed, 2));
}

namespace {

// Dyadic log whose active link set is a 20-link chain segment that stays
// fixed inside each 100 s block and shifts by a varying amount (5, 15, 10,
// repeating) at block boundaries. The links are re-emitted every 10 s, so
// 10 s windows inside a block are identical while 100 s windows always
// differ from their successor by a different amount.
EventLog drifting_log(int blocks) {
  EventLog log;
  log.kind = LogKind::dyadic;
  const int shifts[3] = {5, 15, 10};
  NodeId base = 0;
  for (int r = 0; r < blocks; ++r) {
    if (r > 0) base += static_cast<NodeId>(shifts[(r - 1) % 3]);
    for (int k = 0; k < 10; ++k) {
      const std::int64_t t = r * 100 + k * 10;
      for (NodeId i = base; i < base + 20; ++i) {
        DyadicRecord rec;
        rec.timestamp = t;
        rec.from = i;
        rec.to.push_back(i + 1);
        log.dyads.push_back(rec);
      }
    }
  }
  for (NodeId v = 0; v < 200; ++v) log.actors.intern("a" + std::to_string(v));
  log.span = Interval{0, blocks * 100};
  return log;
}

}  // namespace

TEST_CASE("stats table over epsilon candidates") {
  EventLog log = drifting_log(8);
  const std::int64_t epsilons[] = {10, 100};
  const Metric metrics[] = {Metric::link};
  auto rows = stats_for_epsilons(log, epsilons, metrics, 2);
  REQUIRE(rows.size() == 2);

  // At the tiny window the system barely moves between consecutive
  // snapshots, so the quantized series compresses into long runs; at the
  // block scale every pair lands on a different score.
  CHECK(rows[0].stats.string_diversity < rows[1].stats.string_diversity);
  CHECK(rows[1].stats.string_diversity == 1.0);
  // Exactly one advisory pick per metric.
  int picks = 0;
  for (const auto& r : rows) picks += r.recommended ? 1 : 0;
  CHECK(picks == 1);
}

TEST_CASE("stats table row count matches epsilons times metrics") {
  EventLog log = drifting_log(6);
  const std::int64_t epsilons[] = {10, 25, 50, 75};
  const Metric metrics[] = {Metric::node, Metric::link, Metric::neighbor,
                            Metric::gamma};
  auto rows = stats_for_epsilons(log, epsilons, metrics, 2);
  CHECK(rows.size() == 16);
}

TEST_CASE("single epsilon gives a single row") {
  EventLog log = drifting_log(4);
  const std::int64_t epsilons[] = {50};
  const Metric metrics[] = {Metric::node};
  auto rows = stats_for_epsilons(log, epsilons, metrics, 2);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].recommended);
}
