#pragma once

#include <stdexcept>
#include <string>

namespace dynseg {

// Failure categories surfaced to the CLI. Everything here is a data or
// usage problem, not a programming error.
enum class Errc {
  malformed_header,
  empty_input,
  wrong_kind,
  invalid_epsilon,
  non_contiguous,
  not_common_node,
  out_of_range,
  invalid_alpha,
  invalid_metric,
  too_few_snapshots,
  empty_series,
  zero_mean,
  span_too_short,
  io_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace dynseg
