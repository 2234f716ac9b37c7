// Command-line front end. Data goes to stdout, diagnostics to stderr.
// Exit codes: 0 success (and valid families), 1 invalid family in verify
// mode, 2 usage or input errors.

#include "tilted/chains.hpp"
#include "tilted/concentration.hpp"
#include "tilted/cutpoint.hpp"
#include "tilted/family_io.hpp"
#include "tilted/prng.hpp"
#include "tilted/search.hpp"
#include "tilted/subset.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using tilted::Json;

struct SetListOptions {
  std::string file;
  int n = 0;
  long long p = -1;
  long long q = -1;
  bool patterns = false;
  std::vector<std::string> sets;
};

std::vector<int> parse_element_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    int value = std::stoi(tok, &used);
    if (used != tok.size())
      throw std::invalid_argument("bad element '" + tok + "' in set list");
    out.push_back(value);
  }
  return out;
}

// Resolve a family either from --file or from inline --n/--set options;
// explicit --p/--q/--patterns override the file's parameters.
tilted::FamilyDocument resolve_family(const SetListOptions& opt) {
  tilted::FamilyDocument doc;
  if (!opt.file.empty()) {
    doc = tilted::load_family_document(opt.file);
    if (opt.p >= 0) doc.params.p = opt.p;
    if (opt.q >= 0) doc.params.q = opt.q;
    if (opt.patterns) doc.params.patterns = true;
    doc.params.validate();
    return doc;
  }
  if (opt.n == 0)
    throw std::invalid_argument("provide --file or --n with --set lists");
  std::vector<std::uint64_t> masks;
  for (const std::string& s : opt.sets) {
    const auto elems = parse_element_list(s);
    masks.push_back(
        tilted::Subset::from_elements(
            std::span<const int>(elems.data(), elems.size()), opt.n)
            .bits);
  }
  doc.family = tilted::Family::from_masks(opt.n, std::move(masks));
  doc.params.p = opt.p < 0 ? 1 : opt.p;
  doc.params.q = opt.q < 0 ? 0 : opt.q;
  doc.params.patterns = opt.patterns;
  doc.params.validate();
  return doc;
}

int run_verify(const SetListOptions& opt, std::size_t max_conflicts,
               bool refs) {
  const auto doc = resolve_family(opt);
  const auto verdict =
      tilted::verify_family(doc.family, doc.params, max_conflicts);
  Json out;
  out["valid"] = verdict.valid;
  out["pairs_checked"] = verdict.pairs_checked;
  if (!verdict.valid) {
    Json pairs = Json::array();
    for (const auto& [a, b] : verdict.conflicts) {
      pairs.push_back(Json::array(
          {tilted::subset_json(tilted::Subset(a, doc.family.n)),
           tilted::subset_json(tilted::Subset(b, doc.family.n))}));
    }
    out["conflicts"] = std::move(pairs);
  }
  if (refs)
    out["refs"] = Json{{"valid", "Def. 2 forbidden-pair condition"}};
  std::cout << out.dump() << "\n";
  return verdict.valid ? 0 : 1;
}

int run_cutpoint(const SetListOptions& opt, bool trace, bool refs) {
  const auto doc = resolve_family(opt);
  if (doc.params.p < 1 || doc.params.q < 1)
    throw std::invalid_argument("cutpoint requires p >= 1 and q >= 1");
  for (std::size_t i = 0; i < doc.family.size(); ++i) {
    const tilted::Subset set = doc.family.member(i);
    const auto report = tilted::cut_points(set, doc.params.p, doc.params.q);
    Json line;
    line["set"] = tilted::subset_json(set);
    line["cutpoints"] = report.cut_points;
    line["chosen"] = report.cut_points.front();
    if (trace) {
      Json tr = Json::array();
      for (std::size_t u = 0; u < report.trace.size(); ++u) {
        tr.push_back(Json{{"u", u},
                          {"f", tilted::rational_string(report.trace[u].first)},
                          {"g", tilted::rational_string(report.trace[u].second)}});
      }
      line["trace"] = std::move(tr);
    }
    if (refs)
      line["refs"] = Json{{"cutpoints", "Eq. (1), Lemma 2.2"},
                          {"trace", "functions f and g"}};
    std::cout << line.dump() << "\n";
  }
  return 0;
}

int run_chains(int n, long long p, long long q, int x, int r, int samples,
               std::uint64_t seed, bool refs) {
  auto emit = [&](const tilted::BlockPermutation& pi, const Json& pi_json) {
    const auto chain = tilted::make_chain(x, r, pi, p, q, n);
    Json line;
    line["x"] = x;
    line["r"] = r;
    line["pi"] = pi_json;
    Json mem = Json::array();
    for (const auto& m : chain.members) mem.push_back(tilted::subset_json(m));
    line["members"] = std::move(mem);
    line["pairwise_forbidden"] = tilted::verify_chain_forbidden(chain, p, q);
    if (refs)
      line["refs"] = Json{{"members", "canonical sets C(x,k) under Pi_x"},
                          {"pairwise_forbidden", "chain property (o1)"}};
    std::cout << line.dump() << "\n";
  };
  emit(tilted::BlockPermutation::identity(x, n), Json("identity"));
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const auto pi = tilted::BlockPermutation::random(x, n, rng);
    emit(pi, Json{{"lower", pi.lower}, {"upper", pi.upper}});
  }
  return 0;
}

int run_lym(const SetListOptions& opt, bool refs) {
  const auto doc = resolve_family(opt);
  if (doc.params.p < 1 || doc.params.q < 1)
    throw std::invalid_argument("lym requires p >= 1 and q >= 1");
  const int n = doc.family.n;
  std::vector<std::vector<std::uint64_t>> slices(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < doc.family.size(); ++i) {
    const tilted::Subset m = doc.family.member(i);
    slices[static_cast<std::size_t>(
        tilted::choose_cut_point(m, doc.params.p, doc.params.q))]
        .push_back(m.bits);
  }
  Json out;
  out["n"] = n;
  out["p"] = doc.params.p;
  out["q"] = doc.params.q;
  bool all_ok = true;
  Json per_x = Json::array();
  for (int x = 0; x <= n; ++x) {
    if (slices[static_cast<std::size_t>(x)].empty()) continue;
    const auto slice =
        tilted::Family::from_masks(n, slices[static_cast<std::size_t>(x)]);
    const tilted::Rational sum =
        tilted::lym_sum(slice, x, doc.params.p, doc.params.q);
    const bool ok = sum <= doc.params.q;
    all_ok = all_ok && ok;
    per_x.push_back(Json{{"x", x},
                         {"members", slice.size()},
                         {"sum", tilted::rational_string(sum)},
                         {"leq_q", ok}});
  }
  out["per_x"] = std::move(per_x);
  out["all_leq_q"] = all_ok;
  if (refs)
    out["refs"] = Json{{"sum", "Eq. (bin)"},
                       {"leq_q", "Eq. (bin) right-hand side q"}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_concentration(int n, long long p, long long q, double threshold,
                      long long sample_count, std::uint64_t seed, bool refs) {
  if (p < 1 || q < 1)
    throw std::invalid_argument("concentration requires p >= 1 and q >= 1");
  const tilted::BandSpec spec =
      threshold > 0 ? tilted::BandSpec::with_threshold(n, threshold)
                    : tilted::BandSpec::natural(n);
  Json out;
  out["n"] = n;
  out["p"] = p;
  out["q"] = q;
  out["threshold"] = spec.threshold;
  out["bandsize"] = tilted::count_band_family(spec);
  out["band_bound"] = std::ldexp(1.0, n + 1) / n;  // 2*2^n/n
  Json per_x = Json::array();
  for (int x = 1; x <= n; ++x) {
    per_x.push_back(
        Json{{"x", x},
             {"violators", tilted::band_violators_at(spec, x)},
             {"chernoff_rhs", tilted::chernoff_rhs(n, x, spec.threshold)}});
  }
  out["per_x"] = std::move(per_x);
  const auto window = tilted::concentration_window(n, p, q);
  out["window"] = Json::array({window.lo, window.hi});
  out["upper_bound"] = tilted::explicit_upper_bound(n, p, q).str();
  if (sample_count > 0) {
    if (p > q)
      throw std::invalid_argument(
          "sampled window checks need p <= q (relabel i -> n+1-i otherwise)");
    std::mt19937_64 rng(seed);
    long long violations = 0;
    double max_distance = 0;
    for (long long s = 0; s < sample_count; ++s) {
      const tilted::Subset g = tilted::sample_outside_band(rng, spec);
      const auto check = tilted::cut_point_window_check(g, p, q);
      if (!check.all_within) ++violations;
      for (double d : check.distances) max_distance = std::max(max_distance, d);
    }
    out["sample"] = Json{{"count", sample_count},
                         {"seed", seed},
                         {"window_violations", violations},
                         {"max_distance", max_distance}};
  }
  if (refs)
    out["refs"] = Json{{"bandsize", "Lemma 2.4 family G"},
                       {"per_x", "Eq. (cher)"},
                       {"window", "Lemma 2.5"},
                       {"upper_bound", "Theorem aggregation |G| + sum fx"}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_search(int n, long long p, long long q, bool patterns, long long budget,
               int workers, bool canonical, bool refs) {
  if (canonical && workers > 1)
    throw std::invalid_argument(
        "canonical mode is single-worker; pass --no-canonical with --workers");
  const tilted::TiltParams params{p, q, patterns};
  const auto result = tilted::max_family_exact(
      n, params, std::chrono::milliseconds(budget), workers);
  Json out;
  out["n"] = n;
  out["p"] = p;
  out["q"] = q;
  out["patterns"] = patterns;
  out["size"] = result.size;
  out["optimal"] = result.optimal;
  out["nodes_explored"] = result.nodes_explored;
  out["time_budget_hit"] = result.time_budget_hit;
  Json witness = Json::array();
  for (std::size_t i = 0; i < result.witness.size(); ++i)
    witness.push_back(tilted::subset_json(result.witness.member(i)));
  out["witness"] = std::move(witness);
  if (refs)
    out["refs"] = Json{
        {"size", "maximum independent set of the Def. 2 conflict graph"}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_construct(int n, long long p, long long q, const std::string& kind,
                  bool patterns) {
  tilted::Family fam;
  if (kind == "middle") {
    fam = tilted::construct_middle_level(n);
  } else if (kind == "levels") {
    fam = tilted::construct_consecutive_levels(n, p, q);
  } else {
    throw std::invalid_argument("unknown construction kind '" + kind +
                                "' (middle|levels)");
  }
  const tilted::TiltParams params{p, q, patterns};
  params.validate();
  std::cout << tilted::family_document_json(fam, params).dump() << "\n";
  return 0;
}

int run_sweep(int n_lo, int n_hi, long long p, long long q, bool patterns,
              const std::string& mode_name, long long budget,
              std::uint64_t seed, const std::string& out_path) {
  tilted::SweepMode mode = tilted::SweepMode::kAuto;
  if (mode_name == "exact")
    mode = tilted::SweepMode::kExact;
  else if (mode_name == "heuristic")
    mode = tilted::SweepMode::kHeuristic;
  else if (mode_name != "auto")
    throw std::invalid_argument("unknown sweep mode '" + mode_name +
                                "' (auto|exact|heuristic)");
  const auto rows =
      tilted::sweep(n_lo, n_hi, tilted::TiltParams{p, q, patterns}, mode,
                    std::chrono::milliseconds(budget), seed);
  const std::string csv = tilted::sweep_csv(rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(p,q)-tilted Sperner families: verification, cut points, "
               "chains, concentration bounds and extremal search"};
  app.require_subcommand(1);
  bool refs = false;
  app.add_flag("--paper-refs", refs,
               "annotate reported quantities with their equation/lemma tags");

  SetListOptions verify_opt;
  std::size_t max_conflicts = std::numeric_limits<std::size_t>::max();
  auto* verify = app.add_subcommand("verify", "check a family for forbidden pairs");
  verify->add_option("--file", verify_opt.file, "family JSON file");
  verify->add_option("--n", verify_opt.n, "ground set size (inline mode)");
  verify->add_option("--set", verify_opt.sets, "set as comma-separated elements (repeatable)");
  verify->add_option("--p", verify_opt.p, "tilt parameter p");
  verify->add_option("--q", verify_opt.q, "tilt parameter q");
  verify->add_flag("--patterns", verify_opt.patterns, "enable condition (ii)");
  verify->add_option("--max-conflicts", max_conflicts, "cap on reported pairs");

  SetListOptions cut_opt;
  bool cut_trace = false;
  auto* cutpoint = app.add_subcommand("cutpoint", "cut points of each set");
  cutpoint->add_option("--file", cut_opt.file, "family JSON file");
  cutpoint->add_option("--n", cut_opt.n, "ground set size (inline mode)");
  cutpoint->add_option("--set", cut_opt.sets, "set as comma-separated elements (repeatable)");
  cutpoint->add_option("--p", cut_opt.p, "tilt parameter p (>=1)");
  cutpoint->add_option("--q", cut_opt.q, "tilt parameter q (>=1)");
  cutpoint->add_flag("--trace", cut_trace, "include exact f/g values per position");

  int ch_n = 0, ch_x = 0, ch_r = 0, ch_samples = 0;
  long long ch_p = 1, ch_q = 1;
  std::uint64_t ch_seed = 0;
  auto* chains = app.add_subcommand("chains", "chain members and the forbidden-pair verdict");
  chains->add_option("--n", ch_n, "ground set size")->required();
  chains->add_option("--p", ch_p, "tilt parameter p (>=1)")->required();
  chains->add_option("--q", ch_q, "tilt parameter q (>=1)")->required();
  chains->add_option("--x", ch_x, "block split position")->required();
  chains->add_option("--r", ch_r, "residue class, 0 <= r < q")->required();
  chains->add_option("--samples", ch_samples, "number of random block permutations");
  chains->add_option("--seed", ch_seed, "sampling seed");

  SetListOptions lym_opt;
  auto* lym = app.add_subcommand("lym", "per-cut-point LYM sums of a family");
  lym->add_option("--file", lym_opt.file, "family JSON file")->required();
  lym->add_option("--p", lym_opt.p, "override p");
  lym->add_option("--q", lym_opt.q, "override q");

  int co_n = 0;
  long long co_p = 1, co_q = 1, co_samples = 0;
  double co_threshold = 0;
  std::uint64_t co_seed = 0;
  bool co_exact = false;
  auto* concentration = app.add_subcommand(
      "concentration", "band family counts, Chernoff checks, explicit bound");
  concentration->add_option("--n", co_n, "ground set size (>=2)")->required();
  concentration->add_option("--p", co_p, "tilt parameter p (>=1)")->required();
  concentration->add_option("--q", co_q, "tilt parameter q (>=1)")->required();
  concentration->add_option("--threshold", co_threshold, "band threshold T (default sqrt(n ln n))");
  auto* co_exact_flag = concentration->add_flag("--exact", co_exact, "exact counts only (default)");
  auto* co_sample_opt = concentration->add_option(
      "--sample", co_samples, "also sample this many subsets outside the band");
  concentration->add_option("--seed", co_seed, "sampling seed");
  co_sample_opt->excludes(co_exact_flag);

  int se_n = 0, se_workers = 1;
  long long se_p = 1, se_q = 0, se_budget = 10000;
  bool se_patterns = false, se_canonical = true;
  auto* search = app.add_subcommand("search", "exact maximum family size");
  search->add_option("--n", se_n, "ground set size (<=16)")->required();
  search->add_option("--p", se_p, "tilt parameter p")->required();
  search->add_option("--q", se_q, "tilt parameter q")->required();
  search->add_flag("--patterns", se_patterns, "enable condition (ii)");
  search->add_option("--budget-ms", se_budget, "time budget in milliseconds");
  search->add_option("--workers", se_workers, "parallel workers");
  search->add_flag("--canonical,!--no-canonical", se_canonical,
                   "single-worker deterministic witness (default on)");

  int cn_n = 0;
  long long cn_p = 1, cn_q = 2;
  std::string cn_kind = "middle";
  bool cn_patterns = true;
  auto* construct = app.add_subcommand("construct", "level constructions");
  construct->add_option("--n", cn_n, "ground set size")->required();
  construct->add_option("--p", cn_p, "tilt parameter p");
  construct->add_option("--q", cn_q, "tilt parameter q");
  construct->add_option("--kind", cn_kind, "middle | levels");
  construct->add_flag("--patterns,!--no-patterns", cn_patterns,
                      "patterns flag recorded in the emitted document");

  int sw_lo = 2, sw_hi = 8;
  long long sw_p = 1, sw_q = 2, sw_budget = 2000;
  bool sw_patterns = false;
  std::string sw_mode = "auto", sw_out;
  std::uint64_t sw_seed = 0;
  auto* sweep = app.add_subcommand("sweep", "n-sweep CSV of bounds and sizes");
  sweep->add_option("--n-lo", sw_lo, "first n (>=2)");
  sweep->add_option("--n-hi", sw_hi, "last n (<=16)");
  sweep->add_option("--p", sw_p, "tilt parameter p")->required();
  sweep->add_option("--q", sw_q, "tilt parameter q")->required();
  sweep->add_flag("--patterns", sw_patterns, "enable condition (ii)");
  sweep->add_option("--mode", sw_mode, "auto | exact | heuristic");
  sweep->add_option("--budget-ms", sw_budget, "search budget per n");
  sweep->add_option("--seed", sw_seed, "greedy seed");
  sweep->add_option("--out", sw_out, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(verify)) return run_verify(verify_opt, max_conflicts, refs);
    if (app.got_subcommand(cutpoint)) return run_cutpoint(cut_opt, cut_trace, refs);
    if (app.got_subcommand(chains))
      return run_chains(ch_n, ch_p, ch_q, ch_x, ch_r, ch_samples, ch_seed, refs);
    if (app.got_subcommand(lym)) return run_lym(lym_opt, refs);
    if (app.got_subcommand(concentration))
      return run_concentration(co_n, co_p, co_q, co_threshold, co_samples,
                               co_seed, refs);
    if (app.got_subcommand(search))
      return run_search(se_n, se_p, se_q, se_patterns, se_budget, se_workers,
                        se_canonical, refs);
    if (app.got_subcommand(construct))
      return run_construct(cn_n, cn_p, cn_q, cn_kind, cn_patterns);
    if (app.got_subcommand(sweep))
      return run_sweep(sw_lo, sw_hi, sw_p, sw_q, sw_patterns, sw_mode,
                       sw_budget, sw_seed, sw_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
