#include "dynseg/nullmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dynseg {

namespace {

// Scaled prefix sums of the null-model terms for one (a,b): all terms are
// divided by exp(max log term), so partial sums stay in normalized range and
// the max term contributes exactly 1.0.
struct TermSums {
  std::vector<double> prefix;  // prefix[c] = sum_{x<=c} exp(t_x - t_max)
  double total = 0.0;          // prefix.back()
};

}  // namespace

NullModel::NullModel(std::int64_t max_total) {
  if (max_total < 0) max_total = 0;
  log_fact_.resize(static_cast<std::size_t>(max_total) + 1);
  log_fact_[0] = 0.0;
  for (std::size_t k = 1; k < log_fact_.size(); ++k)
    log_fact_[k] = log_fact_[k - 1] + std::log(static_cast<double>(k));
}

double NullModel::log_binomial(std::int64_t n, std::int64_t k) const {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (n < static_cast<std::int64_t>(log_fact_.size()))
    return log_fact_[n] - log_fact_[k] - log_fact_[n - k];
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

static TermSums term_sums(const NullModel& model, std::int64_t a, std::int64_t b) {
  const std::int64_t m = std::min(a, b);
  std::vector<double> log_terms(static_cast<std::size_t>(m) + 1);
  double log_max = -std::numeric_limits<double>::infinity();
  for (std::int64_t x = 0; x <= m; ++x) {
    log_terms[x] = model.log_binomial(a + b - x, x);
    log_max = std::max(log_max, log_terms[x]);
  }
  TermSums sums;
  sums.prefix.resize(log_terms.size());
  double running = 0.0;
  for (std::size_t x = 0; x < log_terms.size(); ++x) {
    running += std::exp(log_terms[x] - log_max);
    sums.prefix[x] = running;
  }
  sums.total = running;
  return sums;
}

double NullModel::null_cdf(std::int64_t a, std::int64_t b, std::int64_t c) const {
  if (a < 0 || b < 0)
    fail(Errc::out_of_range, "set sizes must be non-negative");
  if (c < 0 || c > std::min(a, b))
    fail(Errc::out_of_range,
         "common count " + std::to_string(c) + " outside [0, min(" +
             std::to_string(a) + "," + std::to_string(b) + ")]");
  TermSums sums = term_sums(*this, a, b);
  if (c == std::min(a, b)) return 1.0;
  return sums.prefix[static_cast<std::size_t>(c)] / sums.total;
}

std::optional<std::int64_t> NullModel::critical_common(std::int64_t a, std::int64_t b,
                                                       double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0))
    fail(Errc::invalid_alpha, "alpha must lie in (0,1)");
  if (a < 0 || b < 0)
    fail(Errc::out_of_range, "set sizes must be non-negative");
  TermSums sums = term_sums(*this, a, b);
  const double bound = alpha * sums.total;
  std::optional<std::int64_t> critical;
  for (std::size_t x = 0; x < sums.prefix.size(); ++x) {
    if (sums.prefix[x] <= bound)
      critical = static_cast<std::int64_t>(x);
    else
      break;  // prefix sums are increasing
  }
  return critical;
}

NullAssessment NullModel::assess_pair(std::int64_t prev_size, std::int64_t next_size,
                                      std::int64_t common, double alpha) const {
  NullAssessment out;
  out.set_size_a = prev_size;
  out.set_size_b = next_size;
  out.common = common;
  out.alpha = alpha;
  out.p_value = null_cdf(prev_size, next_size, common);
  out.critical_common = critical_common(prev_size, next_size, alpha);
  if (out.critical_common && prev_size + next_size > 0) {
    const double cstar = static_cast<double>(*out.critical_common);
    out.threshold_jaccard =
        cstar / (static_cast<double>(prev_size + next_size) - cstar);
  }
  out.significant_change = out.critical_common && common <= *out.critical_common;
  return out;
}

}  // namespace dynseg
