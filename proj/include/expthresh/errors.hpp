#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expthresh {

enum class ErrorCode {
  invalid_argument,
  budget_exceeded,
  materialization_too_large,
  witness_search_inconclusive,
  indeterminate_at_precision,
  no_root,
  precondition_violated,
  empty_family,
  degenerate_threshold,
  retries_exhausted,
  width_cap_exceeded,
  inner_certificate_invalid,
  degenerate_pivot_limit,
  small_jr_branch,
  parse_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace expthresh
