#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace displace {

using Score = std::int64_t;
using Candidate = std::int32_t;

enum class Errc {
  empty,
  not_nonincreasing,
  step_mismatch,
  length_mismatch,
  overflow,
  level_out_of_range,
  empty_boundary,
  not_realizable,
  internal_realization_failure,
  not_certified,
  infeasible_input,
  sumset_too_large,
  too_large,
  invalid_dispersion,
  incomplete_ranking,
  malformed_line,
  count_mismatch,
  invalid_argument,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::empty: return "Empty";
    case Errc::not_nonincreasing: return "NotNonincreasing";
    case Errc::step_mismatch: return "StepMismatch";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::overflow: return "Overflow";
    case Errc::level_out_of_range: return "LevelOutOfRange";
    case Errc::empty_boundary: return "EmptyBoundary";
    case Errc::not_realizable: return "NotRealizable";
    case Errc::internal_realization_failure: return "InternalRealizationFailure";
    case Errc::not_certified: return "NotCertified";
    case Errc::infeasible_input: return "InfeasibleInput";
    case Errc::sumset_too_large: return "SumsetTooLarge";
    case Errc::too_large: return "TooLarge";
    case Errc::invalid_dispersion: return "InvalidDispersion";
    case Errc::incomplete_ranking: return "IncompleteRanking";
    case Errc::malformed_line: return "MalformedLine";
    case Errc::count_mismatch: return "CountMismatch";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

// `where` carries an offending index or a 1-based line number, -1 if none.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::int64_t where = -1)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), where_(where) {}

  Errc code() const noexcept { return code_; }
  std::int64_t where() const noexcept { return where_; }

 private:
  Errc code_;
  std::int64_t where_;
};

inline Score checked_add(Score a, Score b) {
  Score r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::overflow, "integer addition overflow");
  return r;
}

inline Score checked_sub(Score a, Score b) {
  Score r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(Errc::overflow, "integer subtraction overflow");
  return r;
}

inline Score checked_mul(Score a, Score b) {
  Score r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::overflow, "integer multiplication overflow");
  return r;
}

// Result lies in [0, g) for g > 0.
inline Score floor_mod(Score a, Score g) {
  Score r = a % g;
  return r < 0 ? r + g : r;
}

// Rounds toward negative infinity for g > 0.
inline Score floor_div(Score a, Score g) { return (a - floor_mod(a, g)) / g; }

}  // namespace displace
