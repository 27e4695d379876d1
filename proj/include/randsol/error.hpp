#pragma once

#include <stdexcept>
#include <string>

namespace randsol {

enum class Errc {
  parse_error,
  dimension_mismatch,
  index_out_of_range,
  empty_subset,
  too_large,
  bad_partition,
  bad_embedding,
  degenerate_denominator,
  precondition_failed,
  inconsistent_system,
  box_too_large,
  zero_count,
  degenerate_variance,
  not_abundant,
  rank_identity_violation,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace randsol
