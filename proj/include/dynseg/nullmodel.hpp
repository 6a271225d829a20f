#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dynseg/errors.hpp"

namespace dynseg {

// Significance assessment of an observed overlap of `common` elements
// between two sets of sizes A and B.
struct NullAssessment {
  std::int64_t set_size_a = 0;
  std::int64_t set_size_b = 0;
  std::int64_t common = 0;
  double p_value = 1.0;
  double alpha = 0.05;
  // Largest overlap count whose cumulative null probability is <= alpha.
  // Absent when even zero overlap is not significant; then no observation
  // on these set sizes can signal change.
  std::optional<std::int64_t> critical_common;
  // c* / (A + B - c*): the Jaccard score at exactly c* commons. Reporting
  // only; decisions are made on counts.
  std::optional<double> threshold_jaccard;
  bool significant_change = false;  // common <= c*
};

// Combinatorial null model for set overlap:
//
//   P(A,B,C) = sum_{x=0..C} binom(A+B-x, x) / sum_{x=0..min(A,B)} binom(A+B-x, x)
//
// the probability that two sets of sizes A and B share at most C elements
// when every possible intersection count is equally likely. Evaluated in
// log space via a log-factorial table sized to the largest A+B expected;
// the table is built once and read-only afterwards, so one instance can be
// shared freely across threads. Totals beyond the table fall back to
// std::lgamma.
class NullModel {
 public:
  explicit NullModel(std::int64_t max_total = 0);

  // Cumulative probability of sharing at most c elements. OutOfRange when
  // c < 0 or c > min(a,b); monotone in c and exactly 1.0 at c = min(a,b).
  double null_cdf(std::int64_t a, std::int64_t b, std::int64_t c) const;

  // Largest c with null_cdf(a,b,c) <= alpha, or nullopt when c = 0 already
  // exceeds alpha. InvalidAlpha unless 0 < alpha < 1.
  std::optional<std::int64_t> critical_common(std::int64_t a, std::int64_t b,
                                              double alpha) const;

  NullAssessment assess_pair(std::int64_t prev_size, std::int64_t next_size,
                             std::int64_t common, double alpha) const;

  double log_binomial(std::int64_t n, std::int64_t k) const;

 private:
  std::vector<double> log_fact_;  // log k! for k in [0, max_total]
};

}  // namespace dynseg
