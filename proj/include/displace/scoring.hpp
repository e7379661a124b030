#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "displace/error.hpp"

namespace displace {

/** Nonincreasing points-per-rank vector, p[0] for the top position. */
class ScoringVector {
 public:
  ScoringVector() = default;

  std::span<const Score> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Score operator[](std::size_t r) const { return values_[r]; }
  Score top() const { return values_.front(); }
  Score bottom() const { return values_.back(); }

  std::span<const Score> top_segment(std::size_t len) const {
    return std::span<const Score>(values_).first(len);
  }
  std::span<const Score> bottom_segment(std::size_t len) const {
    return std::span<const Score>(values_).last(len);
  }

  friend ScoringVector validate_scoring_vector(std::vector<Score> values);

 private:
  explicit ScoringVector(std::vector<Score> v) : values_(std::move(v)) {}
  std::vector<Score> values_;
};

inline ScoringVector validate_scoring_vector(std::vector<Score> values) {
  if (values.empty()) throw Error(Errc::empty, "scoring vector is empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1]) {
      throw Error(Errc::not_nonincreasing,
                  "scoring vector increases at index " + std::to_string(i),
                  static_cast<std::int64_t>(i));
    }
  }
  return ScoringVector(std::move(values));
}

/** One ballot's score segment written as baseline + step * level. */
struct APLadder {
  Score baseline = 0;
  Score step = 1;
  std::vector<Score> levels;  // nonincreasing, last entry 0

  std::size_t length() const { return levels.size(); }
  Score score(std::size_t j) const { return baseline + step * levels[j]; }
  Score max_score() const { return score(0); }
  Score min_score() const { return score(levels.size() - 1); }

  std::vector<Score> scores() const {
    std::vector<Score> out(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j) out[j] = score(j);
    return out;
  }

  friend bool operator==(const APLadder&, const APLadder&) = default;
};

// g is the gcd of consecutive differences, so it is the largest valid step.
inline APLadder extract_ap_ladder(std::span<const Score> segment) {
  if (segment.empty()) throw Error(Errc::empty, "ladder segment is empty");
  for (std::size_t i = 1; i < segment.size(); ++i) {
    if (segment[i] > segment[i - 1]) {
      throw Error(Errc::not_nonincreasing,
                  "segment increases at index " + std::to_string(i),
                  static_cast<std::int64_t>(i));
    }
  }
  APLadder lad;
  lad.baseline = segment.back();
  Score g = 0;
  for (std::size_t i = 1; i < segment.size(); ++i) {
    g = std::gcd(g, checked_sub(segment[i - 1], segment[i]));
  }
  lad.step = g == 0 ? 1 : g;
  lad.levels.resize(segment.size());
  for (std::size_t j = 0; j < segment.size(); ++j) {
    lad.levels[j] = checked_sub(segment[j], lad.baseline) / lad.step;
  }
  return lad;
}

/**
 * Aggregate coalition supply: prefix[t-1] = F(t) is the largest total the
 * coalition can put on any t targets.
 */
struct PrefixCapacities {
  std::vector<Score> prefix;
  Score step = 1;
  Score residue = 0;
  Score baseline_total = 0;
  std::int64_t ballot_count = 0;

  std::size_t length() const { return prefix.size(); }
  Score total() const { return prefix.empty() ? 0 : prefix.back(); }
  // F(t) with F(0) = 0.
  Score at(std::size_t t) const { return t == 0 ? 0 : prefix[t - 1]; }
  // Largest single-ballot contribution summed over ballots at sorted slot t (1-based).
  Score increment(std::size_t t) const { return at(t) - at(t - 1); }
};

inline PrefixCapacities aggregate_capacities(std::span<const APLadder> ladders) {
  if (ladders.empty()) throw Error(Errc::empty, "no ladders to aggregate");
  const std::size_t len = ladders.front().length();
  const Score g = ladders.front().step;
  PrefixCapacities caps;
  caps.step = g;
  caps.ballot_count = static_cast<std::int64_t>(ladders.size());
  caps.prefix.assign(len, 0);
  for (const APLadder& lad : ladders) {
    if (lad.length() != len) throw Error(Errc::length_mismatch, "ladders differ in length");
    if (lad.step != g) throw Error(Errc::step_mismatch, "ladders differ in step");
    caps.baseline_total = checked_add(caps.baseline_total, lad.baseline);
    Score run = 0;
    for (std::size_t j = 0; j < len; ++j) {
      run = checked_add(run, checked_add(lad.baseline, checked_mul(g, lad.levels[j])));
      caps.prefix[j] = checked_add(caps.prefix[j], run);
    }
  }
  caps.residue = floor_mod(caps.baseline_total, g);
  return caps;
}

/** Capacities of m identical ballots; m = 0 yields the all-zero supply. */
inline PrefixCapacities replicated_capacities(const APLadder& lad, std::int64_t m) {
  if (m < 0) throw Error(Errc::invalid_argument, "negative ballot count");
  PrefixCapacities caps;
  caps.step = lad.step;
  caps.ballot_count = m;
  caps.baseline_total = checked_mul(lad.baseline, m);
  caps.residue = floor_mod(caps.baseline_total, lad.step);
  caps.prefix.resize(lad.length());
  Score run = 0;
  for (std::size_t j = 0; j < lad.length(); ++j) {
    run = checked_add(run, checked_add(lad.baseline, checked_mul(lad.step, lad.levels[j])));
    caps.prefix[j] = checked_mul(run, m);
  }
  return caps;
}

/**
 * Capacities of the negated ladders. A vector y is realizable for the
 * original ladders iff -y is realizable for the negated ones, so upper
 * bounds on y become lower-bound demands on -y.
 */
inline PrefixCapacities mirrored(const PrefixCapacities& caps) {
  PrefixCapacities out;
  const std::size_t len = caps.length();
  const Score total = caps.total();
  out.step = caps.step;
  out.ballot_count = caps.ballot_count;
  out.prefix.resize(len);
  for (std::size_t t = 1; t <= len; ++t) out.prefix[t - 1] = checked_sub(caps.at(len - t), total);
  out.baseline_total = len == 0 ? 0 : checked_sub(0, caps.at(1));
  out.residue = floor_mod(out.baseline_total, out.step);
  return out;
}

}  // namespace displace
