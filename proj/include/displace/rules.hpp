#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "displace/scoring.hpp"

namespace displace {

inline std::vector<Score> borda_points(std::size_t x) {
  std::vector<Score> v(x);
  for (std::size_t r = 0; r < x; ++r) v[r] = static_cast<Score>(x - 1 - r);
  return v;
}

// Points max(0, depth - r) for 0-based rank r.
inline std::vector<Score> truncated_borda_points(std::size_t x, std::size_t depth) {
  std::vector<Score> v(x);
  for (std::size_t r = 0; r < x; ++r) v[r] = r < depth ? static_cast<Score>(depth - r) : 0;
  return v;
}

inline std::vector<Score> approval_points(std::size_t x, std::size_t t) {
  std::vector<Score> v(x, 0);
  for (std::size_t r = 0; r < t && r < x; ++r) v[r] = 1;
  return v;
}

// Three equal bands worth 3, 2 and 1 above a last place worth 0.
inline std::vector<Score> three_two_one_points(std::size_t x) {
  std::vector<Score> v(x, 0);
  for (std::size_t r = 0; r + 1 < x; ++r) v[r] = 3 - static_cast<Score>((3 * r) / (x - 1));
  return v;
}

namespace detail {

inline std::size_t parse_count(std::string_view s, std::string_view what) {
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw Error(Errc::invalid_argument, "bad " + std::string(what) + " in scoring spec: '" + std::string(s) + "'");
  }
  return n;
}

inline std::vector<Score> rule_points(std::string_view spec, std::size_t x) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw Error(Errc::invalid_argument, "scoring spec '" + std::string(spec) + "' needs an argument");
  };
  if (head == "borda") return borda_points(x);
  if (head == "borda3") {
    std::vector<Score> v = borda_points(x);
    for (Score& s : v) s *= 3;
    return v;
  }
  if (head == "plurality") return approval_points(x, 1);
  if (head == "321") return three_two_one_points(x);
  if (head == "truncated") return truncated_borda_points(x, (x + 1) / 2);
  if (head == "kapproval") {
    need_arg();
    return approval_points(x, parse_count(arg, "approval count"));
  }
  if (head == "truncborda") {
    need_arg();
    return truncated_borda_points(x, parse_count(arg, "depth"));
  }
  if (head == "scaled") {
    need_arg();
    const auto c2 = arg.find(':');
    if (c2 == std::string_view::npos) throw Error(Errc::invalid_argument, "scaled spec needs scaled:<g>:<rule>");
    const auto g = static_cast<Score>(parse_count(arg.substr(0, c2), "scale"));
    std::vector<Score> v = rule_points(arg.substr(c2 + 1), x);
    for (Score& s : v) s = checked_mul(s, g);
    return v;
  }
  if (head == "vec") {
    need_arg();
    std::vector<Score> v;
    std::size_t start = 0;
    for (;;) {
      const auto comma = arg.find(',', start);
      const std::string_view tok = arg.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      Score s = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), s);
      if (ec != std::errc() || p != tok.data() + tok.size() || tok.empty()) {
        throw Error(Errc::invalid_argument, "bad entry in vec spec: '" + std::string(tok) + "'");
      }
      v.push_back(s);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (v.size() != x) throw Error(Errc::length_mismatch, "vec spec length differs from candidate count");
    return v;
  }
  throw Error(Errc::invalid_argument, "unknown scoring rule '" + std::string(spec) + "'");
}

}  // namespace detail

/**
 * Parses borda, borda3, plurality, 321, truncated, kapproval:<t>,
 * truncborda:<t>, scaled:<g>:<rule> or vec:<v1>,<v2>,... for x candidates.
 */
inline ScoringVector parse_scoring_spec(std::string_view spec, std::size_t x) {
  if (x < 1) throw Error(Errc::invalid_argument, "need at least one candidate");
  return validate_scoring_vector(detail::rule_points(spec, x));
}

}  // namespace displace
