#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cctype>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "displace/election.hpp"

namespace displace {

/** Seeded generator with portable draw helpers. */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }
  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  // Uniform in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r;
    do {
      r = eng_();
    } while (r >= limit);
    return r % n;
  }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {  // [lo, hi]
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 eng_;
};

struct MallowsConfig {
  std::size_t num_candidates = 0;
  std::size_t num_voters = 0;
  double dispersion = 1.0;
  std::vector<Candidate> reference;  // empty means 0..x-1
  std::uint64_t seed = 0;
};

/**
 * Repeated insertion: the i-th reference item lands d places before the end
 * of the partial ranking with probability proportional to phi^d, so every
 * ranking has probability proportional to phi^(Kendall distance).
 */
inline Profile sample_mallows(const MallowsConfig& cfg) {
  const double phi = cfg.dispersion;
  if (!(phi > 0.0 && phi <= 1.0)) throw Error(Errc::invalid_dispersion, "dispersion must lie in (0, 1]");
  const std::size_t x = cfg.num_candidates;
  std::vector<Candidate> ref = cfg.reference;
  if (ref.empty()) {
    ref.resize(x);
    for (std::size_t i = 0; i < x; ++i) ref[i] = static_cast<Candidate>(i);
  }
  if (ref.size() != x) throw Error(Errc::length_mismatch, "reference ranking has wrong length");
  std::vector<bool> seen(x, false);
  for (Candidate c : ref) {
    if (c < 0 || static_cast<std::size_t>(c) >= x || seen[c]) throw Error(Errc::invalid_argument, "reference is not a permutation");
    seen[c] = true;
  }

  Rng rng(cfg.seed);
  const double log_phi = std::log(phi);
  Profile prof;
  prof.num_candidates = x;
  prof.ballots.reserve(cfg.num_voters);
  std::vector<Candidate> seq;
  for (std::size_t v = 0; v < cfg.num_voters; ++v) {
    seq.clear();
    for (std::size_t i = 0; i < x; ++i) {
      std::size_t back;
      if (phi == 1.0) {
        back = static_cast<std::size_t>(rng.below(i + 1));
      } else {
        // Inverse CDF of the truncated geometric law on {0, ..., i}.
        const double mass = 1.0 - std::pow(phi, static_cast<double>(i + 1));
        const double d = std::floor(std::log1p(-rng.unit() * mass) / log_phi);
        back = std::min<std::size_t>(i, d < 0 ? 0 : static_cast<std::size_t>(d));
      }
      seq.insert(seq.end() - static_cast<std::ptrdiff_t>(back), ref[i]);
    }
    prof.ballots.push_back(Ballot{1, seq});
  }
  return prof;
}

struct UniformScores {
  Score lo = 0;
  Score hi = 100;  // exclusive
};

struct ZipfScores {
  double exponent = 1.1;
  Score scale = 1'000'000;
};

using ScoreDistribution = std::variant<UniformScores, ZipfScores>;

/** Uniform scores come unordered; Zipf scores are sorted nonincreasing. */
inline HonestScores gen_synthetic_scores(std::size_t x, const ScoreDistribution& dist, std::uint64_t seed) {
  if (x < 1) throw Error(Errc::invalid_argument, "need at least one candidate");
  Rng rng(seed);
  std::vector<Score> s(x);
  if (const auto* u = std::get_if<UniformScores>(&dist)) {
    if (u->hi <= u->lo) throw Error(Errc::invalid_argument, "empty uniform range");
    for (Score& v : s) v = rng.between(u->lo, u->hi - 1);
  } else {
    const auto& z = std::get<ZipfScores>(dist);
    for (Score& v : s) {
      const double rank = static_cast<double>(rng.between(1, static_cast<std::int64_t>(x)));
      v = static_cast<Score>(std::floor(static_cast<double>(z.scale) / std::pow(rank, z.exponent)));
    }
    std::sort(s.begin(), s.end(), std::greater<>());
  }
  return HonestScores::from_scores(std::move(s));
}

/** A parsed profile plus the original id of each dense candidate. */
struct PreflibData {
  Profile profile;
  std::vector<std::int64_t> original_ids;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool parse_int(std::string_view s, std::int64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Value after "key:" if the metadata line starts with key (case-insensitive).
inline bool metadata_value(std::string_view body, std::string_view key, std::string_view& value) {
  if (body.size() < key.size()) return false;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(body[i])) != key[i]) return false;
  }
  value = body.substr(key.size());
  return true;
}

}  // namespace detail

inline PreflibData parse_preflib(std::istream& in) {
  using detail::trim;
  std::optional<std::int64_t> declared;
  std::set<std::int64_t> named_ids;
  std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> rows;
  std::vector<std::int64_t> row_lines;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const std::string_view meta = trim(body.substr(1));
      std::string_view value;
      if (detail::metadata_value(meta, "NUMBER ALTERNATIVES:", value)) {
        std::int64_t n;
        if (!detail::parse_int(value, n) || n < 1) throw Error(Errc::malformed_line, "bad alternative count", lineno);
        declared = n;
      } else if (detail::metadata_value(meta, "ALTERNATIVE NAME ", value)) {
        const auto colon = value.find(':');
        std::int64_t id;
        if (colon != std::string_view::npos && detail::parse_int(value.substr(0, colon), id)) named_ids.insert(id);
      }
      continue;
    }
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) throw Error(Errc::malformed_line, "data line lacks ':'", lineno);
    std::int64_t mult;
    if (!detail::parse_int(body.substr(0, colon), mult) || mult < 1) {
      throw Error(Errc::malformed_line, "bad multiplicity", lineno);
    }
    const std::string_view rest = body.substr(colon + 1);
    if (rest.find('{') != std::string_view::npos || rest.find('}') != std::string_view::npos) {
      throw Error(Errc::incomplete_ranking, "tied alternatives are not supported", lineno);
    }
    std::vector<std::int64_t> ids;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const std::string_view tok = rest.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      std::int64_t id;
      if (!detail::parse_int(tok, id)) throw Error(Errc::malformed_line, "bad alternative id", lineno);
      ids.push_back(id);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.emplace_back(mult, std::move(ids));
    row_lines.push_back(lineno);
  }

  std::set<std::int64_t> seen = named_ids;
  for (const auto& [mult, ids] : rows) seen.insert(ids.begin(), ids.end());
  if (!declared && seen.empty()) throw Error(Errc::malformed_line, "number of alternatives is not declared", 0);
  const std::size_t x = declared ? static_cast<std::size_t>(*declared) : seen.size();
  if (seen.size() > x) throw Error(Errc::count_mismatch, "more alternatives observed than declared");
  // Unobserved alternatives take the smallest unused positive ids.
  for (std::int64_t id = 1; seen.size() < x; ++id) seen.insert(id);

  PreflibData out;
  out.original_ids.assign(seen.begin(), seen.end());
  std::map<std::int64_t, Candidate> dense;
  for (std::size_t i = 0; i < out.original_ids.size(); ++i) dense[out.original_ids[i]] = static_cast<Candidate>(i);
  out.profile.num_candidates = x;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [mult, ids] = rows[r];
    Ballot b;
    b.multiplicity = mult;
    std::vector<bool> used(x, false);
    for (std::int64_t id : ids) {
      const Candidate c = dense.at(id);
      if (used[c]) throw Error(Errc::malformed_line, "alternative repeated in ranking", row_lines[r]);
      used[c] = true;
      b.ranking.push_back(c);
    }
    if (b.ranking.size() != x) throw Error(Errc::incomplete_ranking, "ranking omits alternatives", row_lines[r]);
    out.profile.ballots.push_back(std::move(b));
  }
  return out;
}

inline PreflibData parse_preflib(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_preflib(in);
}

/** Writes identical rankings merged, in first-appearance order. */
inline void write_preflib(std::ostream& out, const Profile& prof, std::span<const std::int64_t> ids = {}) {
  auto id_of = [&](Candidate c) { return ids.empty() ? static_cast<std::int64_t>(c) + 1 : ids[c]; };
  std::vector<Ballot> merged;
  std::map<std::vector<Candidate>, std::size_t> where;
  for (const Ballot& b : prof.ballots) {
    auto [it, fresh] = where.emplace(b.ranking, merged.size());
    if (fresh) merged.push_back(b);
    else merged[it->second].multiplicity += b.multiplicity;
  }
  out << "# DATA TYPE: soc\n";
  out << "# NUMBER ALTERNATIVES: " << prof.num_candidates << "\n";
  out << "# NUMBER VOTERS: " << prof.num_voters() << "\n";
  out << "# NUMBER UNIQUE ORDERS: " << merged.size() << "\n";
  for (std::size_t c = 0; c < prof.num_candidates; ++c) {
    out << "# ALTERNATIVE NAME " << id_of(static_cast<Candidate>(c)) << ": c" << c << "\n";
  }
  for (const Ballot& b : merged) {
    out << b.multiplicity << ":";
    for (std::size_t r = 0; r < b.ranking.size(); ++r) out << (r ? "," : " ") << id_of(b.ranking[r]);
    out << "\n";
  }
}

}  // namespace displace
