#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "displace/displace.hpp"
#include "displace/experiments.hpp"

namespace displace::cli {

enum Exit : int {
  ok = 0,
  failure = 1,
  infeasible = 2,
  usage = 64,
  parse = 65,
  resource = 69,
};

inline int exit_code_for(Errc c) {
  switch (c) {
    case Errc::malformed_line:
    case Errc::incomplete_ranking:
    case Errc::count_mismatch:
      return parse;
    case Errc::too_large:
    case Errc::sumset_too_large:
      return resource;
    case Errc::not_realizable:
    case Errc::internal_realization_failure:
      return failure;
    default:
      return infeasible;
  }
}

using Json = nlohmann::ordered_json;

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<Score> read_scores_csv(std::istream& in) {
  std::vector<Score> s;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = displace::detail::trim(line);
    if (body.empty()) continue;
    std::int64_t v;
    if (!displace::detail::parse_int(body, v)) throw Error(Errc::malformed_line, "expected one integer per line", lineno);
    s.push_back(v);
  }
  if (s.empty()) throw Error(Errc::malformed_line, "score file has no entries", 0);
  return s;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

// Writes to the file, or to `fallback` for "-" or an empty path.
template <class Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  fn(f);
}

inline ScoringVector scoring_or_usage(const std::string& spec, std::size_t x) {
  try {
    return parse_scoring_spec(spec, x);
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_argument) throw UsageError(e.what());
    throw;
  }
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::int64_t v;
    if (!displace::detail::parse_int(tok, v)) throw UsageError("bad list entry '" + tok + "'");
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

inline ScoreDistribution parse_distribution(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  try {
    if (parts.size() == 3 && parts[0] == "uniform") return UniformScores{std::stoll(parts[1]), std::stoll(parts[2])};
    if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "zipf") {
      ZipfScores z{std::stod(parts[1])};
      if (parts.size() == 3) z.scale = std::stoll(parts[2]);
      return z;
    }
  } catch (const std::exception&) {
  }
  throw UsageError("distribution must be uniform:<lo>:<hi> or zipf:<s>[:<scale>]");
}

inline Json opt_json(const std::optional<Score>& v) { return v ? Json(*v) : Json(nullptr); }

struct Election {
  HonestScores honest;
  ScoringVector p;
  std::vector<std::int64_t> ids;  // original ids when read from a profile
};

struct InputOpts {
  std::string scores_path;
  std::string profile_path;
  std::string scoring = "borda";
};

inline void add_input(CLI::App* sub, InputOpts& in) {
  auto* s = sub->add_option("--scores", in.scores_path, "Honest scores, one integer per line");
  auto* p = sub->add_option("--profile", in.profile_path, "PrefLib SOC profile to tally");
  s->excludes(p);
  sub->add_option("--scoring", in.scoring, "Scoring rule spec")->capture_default_str();
}

inline Election load(const InputOpts& in) {
  Election e;
  if (!in.scores_path.empty()) {
    auto f = open_in(in.scores_path);
    e.honest = HonestScores::from_scores(read_scores_csv(f));
    e.p = scoring_or_usage(in.scoring, e.honest.size());
  } else if (!in.profile_path.empty()) {
    auto f = open_in(in.profile_path);
    PreflibData d = parse_preflib(f);
    e.p = scoring_or_usage(in.scoring, d.profile.num_candidates);
    e.honest = tally(d.profile, e.p);
    e.ids = std::move(d.original_ids);
  } else {
    throw UsageError("one of --scores or --profile is required");
  }
  return e;
}

inline Json report_json(const VerificationReport& r) {
  return Json{{"separated", r.separated},
              {"meets_cutoff", r.meets_cutoff},
              {"min_outsider_final", opt_json(r.min_outsider_final)},
              {"max_weak_winner_final", opt_json(r.max_weak_winner_final)},
              {"outsiders_in_top_k", r.outsiders_in_top_k},
              {"displaced_count", r.displaced_count}};
}

}  // namespace detail

/** Parses args (args[0] is the program name) and runs one subcommand. */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Coalitional Top-k displacement under positional scoring rules"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  InputOpts in;
  std::size_t k = 0;
  std::int64_t m = 0;

  auto* maxd = app.add_subcommand("max-displacement", "Largest displaceable level and its cutoff interval");
  add_input(maxd, in);
  std::string strategy = "binary";
  bool construct = false, verify = false, levels = false;
  maxd->add_option("-k", k, "Committee size")->required();
  maxd->add_option("-m", m, "Coalition size")->required();
  maxd->add_option("--strategy", strategy)->check(CLI::IsMember({"binary", "linear"}))->capture_default_str();
  maxd->add_flag("--construct", construct, "Include coalition ballots");
  maxd->add_flag("--verify", verify, "Recount the constructed ballots");
  maxd->add_flag("--levels", levels, "Include every evaluated level");

  auto* env = app.add_subcommand("envelope", "Feasible cutoff interval per level");
  add_input(env, in);
  std::size_t level = 0;
  bool sweep = false;
  env->add_option("-k", k, "Committee size")->required();
  env->add_option("-m", m, "Coalition size")->required();
  auto* lvl_opt = env->add_option("--level", level, "Displacement level");
  auto* sweep_opt = env->add_flag("--sweep-levels", sweep, "CSV over all levels");
  lvl_opt->excludes(sweep_opt);

  auto* lat = app.add_subcommand("lattice", "Tag integer points of the aggregate envelope");
  std::string ladder_text;
  bool project = false;
  std::int64_t lat_m = 1;
  lat->add_option("--ladder", ladder_text, "Ballot segment, e.g. 8,5,2")->required();
  lat->add_option("-m", lat_m, "Ballot count")->required()->check(CLI::PositiveNumber);
  lat->add_flag("--project", project, "Project onto the first two prefix sums");

  auto* bc = app.add_subcommand("brute-check", "Oracle against exhaustive enumeration");
  BruteCheckConfig bcc;
  std::string rules_text = "borda,borda3,truncated,plurality,321";
  bc->add_option("--trials", bcc.trials)->capture_default_str();
  bc->add_option("--max-x", bcc.max_x)->capture_default_str()->check(CLI::Range(2, 7));
  bc->add_option("--max-m", bcc.max_m)->capture_default_str()->check(CLI::Range(1, 2));
  bc->add_option("--rules", rules_text)->capture_default_str();
  bc->add_option("--seed", bcc.seed)->capture_default_str();

  auto* gm = app.add_subcommand("gen-mallows", "Sample a Mallows profile as PrefLib SOC");
  MallowsConfig mc;
  std::string out_path;
  gm->add_option("--x", mc.num_candidates)->required();
  gm->add_option("--n", mc.num_voters)->required();
  gm->add_option("--phi", mc.dispersion)->required();
  gm->add_option("--seed", mc.seed)->capture_default_str();
  gm->add_option("--out", out_path, "Output file, '-' for stdout");

  auto* gs = app.add_subcommand("gen-scores", "Synthetic honest scores, one per line");
  std::size_t gs_x = 0;
  std::string dist_text = "uniform:0:1000000";
  std::uint64_t seed = 1;
  gs->add_option("--x", gs_x)->required()->check(CLI::PositiveNumber);
  gs->add_option("--dist", dist_text, "uniform:<lo>:<hi> or zipf:<s>[:<scale>]")->capture_default_str();
  gs->add_option("--seed", seed)->capture_default_str();
  gs->add_option("--out", out_path, "Output file, '-' for stdout");

  auto* bench = app.add_subcommand("bench", "Runtime of max-displacement on synthetic scores");
  std::string xs_text, ms_text;
  std::size_t bench_k = 0;
  std::string bench_rule = "borda";
  bench->add_option("--x", xs_text, "Comma-separated candidate counts")->required();
  bench->add_option("--m", ms_text, "Comma-separated coalition sizes")->required();
  bench->add_option("-k", bench_k, "Committee size (default max(1, x/1000))");
  bench->add_option("--dist", dist_text)->capture_default_str();
  bench->add_option("--scoring", bench_rule)->capture_default_str();
  bench->add_option("--seed", seed)->capture_default_str();

  auto* cmp = app.add_subcommand("baseline-compare", "Oracle against the greedy heuristic on Mallows profiles");
  CompareConfig cc;
  std::string m_list = "0,50,100,200,300,400";
  cmp->add_option("--trials", cc.trials)->capture_default_str();
  cmp->add_option("--x", cc.x)->capture_default_str();
  cmp->add_option("--n", cc.n)->capture_default_str();
  cmp->add_option("-k", cc.k)->capture_default_str();
  cmp->add_option("--phi", cc.phi)->capture_default_str();
  cmp->add_option("--scoring", cc.rule)->capture_default_str();
  cmp->add_option("--m-list", m_list)->capture_default_str();
  cmp->add_option("--seed", cc.seed)->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return usage;
  }

  try {
    if (maxd->parsed()) {
      const Election e = load(in);
      const LevelSearch how = strategy == "linear" ? LevelSearch::linear : LevelSearch::binary;
      const DisplacementResult r = maximize_displacement(e.honest, e.p, k, m, how, levels);
      Json j;
      j["k_star"] = r.k_star;
      j["b_min"] = opt_json(r.b_min_star);
      j["b_max"] = opt_json(r.b_max_star);
      j["x"] = e.honest.size();
      j["k"] = k;
      j["m"] = m;
      j["scoring"] = in.scoring;
      j["strategy"] = strategy;
      if (levels) {
        Json lv = Json::array();
        for (const auto& [l, er] : r.per_level) {
          lv.push_back(Json{{"level", l}, {"feasible", er.feasible}, {"b_min", opt_json(er.b_min)},
                            {"b_max", opt_json(er.b_max)}});
        }
        j["levels"] = lv;
      }
      if (construct || verify) {
        const BoundarySets b = boundary_sets(honest_order(e.honest), k, r.k_star);
        const Score cutoff = r.b_min_star.value_or(0);
        const BallotSet ballots = construct_ballots(e.honest, b, e.p, m, cutoff);
        if (construct) {
          j["cutoff"] = cutoff;
          j["ballots"] = ballots.rankings;
          if (!e.ids.empty()) j["candidate_ids"] = e.ids;
        }
        if (verify) j["verification"] = report_json(verify_manipulation(e.honest, ballots, e.p, k, b, cutoff));
      }
      out << j.dump() << "\n";
      return ok;
    }

    if (env->parsed()) {
      const Election e = load(in);
      const BoundaryWindow w = boundary_window(e.honest, k);
      auto row = [&](std::size_t lv) { return envelope_for_level(e.honest, w, e.p, m, lv); };
      if (sweep) {
        out << "level,b_min,b_max,feasible\n";
        for (std::size_t lv = 1; lv <= w.half; ++lv) {
          const EnvelopeResult r = row(lv);
          out << lv << ',';
          if (r.suppress_min) out << *r.suppress_min;
          out << ',';
          if (r.boost_max) out << *r.boost_max;
          out << ',' << (r.feasible ? 1 : 0) << '\n';
        }
        return ok;
      }
      const EnvelopeResult r = row(level);
      Json j{{"level", r.level}, {"feasible", r.feasible}, {"b_min", opt_json(r.b_min)}, {"b_max", opt_json(r.b_max)},
             {"suppress_min", opt_json(r.suppress_min)}, {"boost_max", opt_json(r.boost_max)}};
      if (level > 0) {
        const CutoffBounds cb = cutoff_bounds(e.honest, w.boundary(level), m, e.p);
        j["b_low"] = cb.low;
        j["b_high"] = cb.high;
      }
      out << j.dump() << "\n";
      return ok;
    }

    if (lat->parsed()) {
      const std::vector<Score> seg = parse_list<Score>(ladder_text);
      const APLadder lad = extract_ap_ladder(seg);
      const PrefixCapacities caps = replicated_capacities(lad, lat_m);
      const std::size_t len = lad.length();
      if (project && len < 2) throw UsageError("--project needs a ladder of length at least 2");
      const Score lo = checked_mul(lat_m, lad.min_score()), hi = checked_mul(lat_m, lad.max_score());
      const double cells = std::pow(static_cast<double>(hi - lo + 1), static_cast<double>(len - 1));
      if (cells > 5e6) throw Error(Errc::too_large, "lattice box has more than 5e6 points");

      // 0 outside, 1 prefix-only, 2 realizable.
      auto tag = [&](const std::vector<Score>& y) { return realizable(y, caps) ? 2 : block_hlp_member(y, caps) ? 1 : 0; };
      static const char* names[] = {"outside", "prefix-only", "realizable"};
      std::map<std::pair<Score, Score>, int> projected;
      std::size_t counts[3] = {0, 0, 0};
      std::vector<Score> y(len, lo);
      if (!project) {
        for (std::size_t i = 0; i < len; ++i) out << (i ? "," : "") << 'y' << i + 1;
        out << ",tag\n";
      }
      for (;;) {
        Score partial = 0;
        for (std::size_t i = 0; i + 1 < len; ++i) partial += y[i];
        y[len - 1] = caps.total() - partial;
        if (y[len - 1] >= lo && y[len - 1] <= hi) {
          const int t = tag(y);
          ++counts[t];
          if (project) {
            int& best = projected.try_emplace({y[0], y[0] + y[1]}, 0).first->second;
            best = std::max(best, t);
          } else {
            for (std::size_t i = 0; i < len; ++i) out << (i ? "," : "") << y[i];
            out << ',' << names[t] << '\n';
          }
        }
        std::size_t i = 0;
        while (i + 1 < len && y[i] == hi) y[i++] = lo;
        if (i + 1 >= len) break;
        ++y[i];
      }
      if (project) {
        out << "prefix1,prefix2,tag\n";
        for (const auto& [pt, t] : projected) out << pt.first << ',' << pt.second << ',' << names[t] << '\n';
      }
      err << "realizable=" << counts[2] << " prefix-only=" << counts[1] << " outside=" << counts[0] << "\n";
      return ok;
    }

    if (bc->parsed()) {
      bcc.rules.clear();
      std::stringstream ss(rules_text);
      std::string r;
      while (std::getline(ss, r, ',')) {
        scoring_or_usage(r, 4);
        bcc.rules.push_back(r);
      }
      if (bcc.rules.empty()) throw UsageError("no rules given");
      const BruteCheckReport rep = run_brute_check(bcc);
      out << "agreement: " << rep.agreed << "/" << rep.rows.size() << "\n";
      for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& row = rep.rows[i];
        if (row.oracle == row.brute) continue;
        out << "mismatch trial=" << i << " rule=" << row.instance.rule << " x=" << row.instance.honest.size()
            << " k=" << row.instance.k << " m=" << row.instance.m << " oracle=" << row.oracle << " brute=" << row.brute
            << "\n";
      }
      return rep.agreed == rep.rows.size() ? ok : failure;
    }

    if (gm->parsed()) {
      const Profile prof = sample_mallows(mc);
      with_output(out_path, out, [&](std::ostream& o) { write_preflib(o, prof); });
      return ok;
    }

    if (gs->parsed()) {
      const HonestScores h = gen_synthetic_scores(gs_x, parse_distribution(dist_text), seed);
      with_output(out_path, out, [&](std::ostream& o) {
        for (Score s : h.scores) o << s << '\n';
      });
      return ok;
    }

    if (bench->parsed()) {
      const auto xs = parse_list<std::size_t>(xs_text);
      const auto ms = parse_list<std::int64_t>(ms_text);
      const ScoreDistribution dist = parse_distribution(dist_text);
      out << "x,m,k,k_star,milliseconds\n";
      for (std::size_t x : xs) {
        const HonestScores h = gen_synthetic_scores(x, dist, seed);
        const ScoringVector p = scoring_or_usage(bench_rule, x);
        const std::size_t kk = bench_k ? bench_k : std::max<std::size_t>(1, x / 1000);
        for (std::int64_t mm : ms) {
          std::size_t ks = 0;
          const double ms_taken = time_ms([&] { ks = maximize_displacement(h, p, kk, mm).k_star; });
          out << x << ',' << mm << ',' << kk << ',' << ks << ',' << ms_taken << '\n';
        }
      }
      return ok;
    }

    if (cmp->parsed()) {
      cc.m_values = parse_list<std::int64_t>(m_list);
      scoring_or_usage(cc.rule, cc.x);
      out << "trial,m,k_star_oracle,k_greedy,ms_oracle,ms_greedy\n";
      for (const CompareRow& r : run_baseline_compare(cc)) {
        out << r.trial << ',' << r.m << ',' << r.k_star << ',' << r.greedy << ',' << r.ms_oracle << ','
            << r.ms_greedy << '\n';
      }
      return ok;
    }
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return usage;
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (e.where() >= 0) err << " (at " << e.where() << ")";
    err << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  }
  return usage;
}

}  // namespace displace::cli
