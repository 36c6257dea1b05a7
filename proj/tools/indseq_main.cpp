// Command-line front end: exhaustive verification over free trees, random
// tree experiments, exact formula tables, interval certification, and the
// heuristic threshold search.  All reports are JSON lines with counts as
// decimal strings; a fixed seed gives byte-identical output regardless of
// the worker count.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "indseq/asymptotics.hpp"
#include "indseq/certifier.hpp"
#include "indseq/counting.hpp"
#include "indseq/free_trees.hpp"
#include "indseq/parallel.hpp"
#include "indseq/rng.hpp"
#include "indseq/sequence.hpp"
#include "indseq/tree.hpp"
#include "indseq/verify.hpp"

using json = nlohmann::json;
using namespace indseq;

namespace {

constexpr const char* kFormatTag = "indseq.report/1";

struct Output {
  std::ofstream file;
  std::ostream* out = &std::cout;
  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    out = &file;
  }
  void line(const json& j) { (*out) << j.dump() << '\n'; }
};

json iseq_json(std::span<const std::uint64_t> iseq) {
  json arr = json::array();
  for (auto v : iseq) arr.push_back(std::to_string(v));
  return arr;
}

json iseq_json(const CountSequence& s) {
  json arr = json::array();
  for (const auto& v : s.terms()) arr.push_back(v.get_str());
  return arr;
}

json rational_json(const Rational& q) {
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

json edges_json(const Tree& t) {
  json arr = json::array();
  for (auto [u, v] : t.edges) arr.push_back(json::array({u, v}));
  return arr;
}

std::pair<int, int> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int n = std::stoi(text);
    return {n, n};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

// ---- verify ----------------------------------------------------------

int run_verify(const std::string& n_range, const std::string& props_csv,
               const std::string& tree_path, const std::string& prufer_path,
               const std::string& out_path, int jobs) {
  Output out;
  out.open(out_path);
  auto props = parse_props(props_csv);
  json props_arr = json::array();
  for (auto p : props) props_arr.push_back(prop_name(p));

  if (!tree_path.empty() || !prufer_path.empty()) {
    // Single-tree mode: check the provided tree only.
    std::ifstream in(tree_path.empty() ? prufer_path : tree_path);
    if (!in) {
      std::cerr << "cannot open tree file\n";
      return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    Tree t = tree_path.empty() ? parse_prufer_text(buffer.str()) : parse_tree_text(buffer.str());
    out.line(json{{"format", kFormatTag}, {"command", "verify"}, {"n", t.n}, {"props", props_arr}});
    TreeChecker checker(props);
    auto parent = parents_from_tree(t);
    auto failure = checker.check(parent);
    auto stats = tree_stats(t);
    json rec{{"type", "tree"},
             {"n", t.n},
             {"iseq", iseq_json(stats.iseq)},
             {"alpha", stats.alpha},
             {"mu", stats.mu},
             {"min_maximal_is", stats.min_maximal_is},
             {"ok", !failure.has_value()}};
    if (failure) rec["failed_prop"] = prop_name(failure->prop);
    out.line(rec);
    out.line(json{{"type", "summary"}, {"trees", 1}, {"counterexamples", failure ? 1 : 0}});
    return failure ? 1 : 0;
  }

  const auto [n_lo, n_hi] = parse_n_range(n_range);
  if (n_lo < 1 || n_hi > 26 || n_lo > n_hi) {
    std::cerr << "verify: n range must lie in 1..26\n";
    return 2;
  }
  out.line(json{{"format", kFormatTag},
                {"command", "verify"},
                {"n_lo", n_lo},
                {"n_hi", n_hi},
                {"props", props_arr}});

  long counterexamples = 0;
  std::uint64_t total = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    // Single producer; batches checked by parallel workers; output stays
    // in enumeration order.
    const int workers = worker_count(jobs);
    const std::size_t batch_trees = 4096;
    std::vector<std::vector<int>> batch;
    batch.reserve(batch_trees);
    std::uint64_t n_count = 0;
    std::vector<TreeChecker> checkers(static_cast<std::size_t>(workers),
                                      TreeChecker(props));
    struct Hit {
      std::size_t offset;
      PropFailure failure;
      std::vector<std::uint64_t> iseq;
    };
    auto flush = [&](std::uint64_t base_index) {
      // Contiguous per-worker slices keep checkers unshared and results
      // ordered without a sort.
      const std::size_t count = batch.size();
      std::vector<std::vector<Hit>> hits(static_cast<std::size_t>(workers));
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) {
        const std::size_t begin = count * static_cast<std::size_t>(w) / static_cast<std::size_t>(workers);
        const std::size_t end = count * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(workers);
        pool.emplace_back([&, w, begin, end]() {
          auto& checker = checkers[static_cast<std::size_t>(w)];
          for (std::size_t i = begin; i < end; ++i)
            if (auto failure = checker.check(batch[i]))
              hits[static_cast<std::size_t>(w)].push_back(Hit{i, *failure, checker.last_sequence()});
        });
      }
      for (auto& th : pool) th.join();
      std::vector<Hit> merged;
      for (auto& h : hits) merged.insert(merged.end(), h.begin(), h.end());
      for (const auto& h : merged) {
        ++counterexamples;
        Tree t = tree_from_parents(batch[h.offset]);
        out.line(json{{"type", "counterexample"},
                      {"n", n},
                      {"tree_index", base_index + h.offset},
                      {"prop", prop_name(h.failure.prop)},
                      {"edges", edges_json(t)},
                      {"iseq", iseq_json(h.iseq)}});
      }
      batch.clear();
    };
    std::uint64_t base = 0;
    enumerate_free_trees(n, [&](std::span<const int> parent) {
      batch.emplace_back(parent.begin(), parent.end());
      ++n_count;
      if (batch.size() >= batch_trees) {
        flush(base);
        base = n_count;
      }
    });
    flush(base);
    total += n_count;
    out.line(json{{"type", "level"}, {"n", n}, {"trees", std::to_string(n_count)}});
  }
  out.line(json{{"type", "summary"},
                {"trees", std::to_string(total)},
                {"counterexamples", counterexamples}});
  return counterexamples > 0 ? 1 : 0;
}

// ---- sample ----------------------------------------------------------

int run_sample(int n, long samples, std::uint64_t seed, const std::string& out_path, int jobs) {
  Output out;
  out.open(out_path);
  out.line(json{{"format", kFormatTag},
                {"command", "sample"},
                {"n", n},
                {"samples", samples},
                {"seed", std::to_string(seed)}});
  struct Row {
    long alpha = 0;
    long head_end = 0;
    long tail_start = 0;
    bool unimodal = false;
    bool olc = false;
  };
  std::vector<Row> rows(static_cast<std::size_t>(samples));
  parallel_for(0, samples, jobs, [&](long i) {
    auto rng = SplitMix64::for_item(seed, static_cast<std::uint64_t>(i));
    Tree t = random_tree(n, rng.next());
    CountSequence iseq = independence_sequence(t);
    Row r;
    r.alpha = iseq.last_nonzero_index();
    const auto& a = iseq.terms();
    std::size_t k = 1;
    while (k < a.size() && a[k - 1] <= a[k]) ++k;
    r.head_end = static_cast<long>(k) - 1;
    std::size_t j = a.size() - 1;
    while (j > 0 && a[j - 1] >= a[j]) --j;
    r.tail_start = static_cast<long>(j);
    r.unimodal = is_unimodal(iseq);
    r.olc = is_ordered_log_concave(iseq);
    rows[static_cast<std::size_t>(i)] = r;
  });
  double alpha_sum = 0;
  long unimodal_count = 0, olc_count = 0, min_head = 1L << 60, max_tail = 0;
  for (long i = 0; i < samples; ++i) {
    const Row& r = rows[static_cast<std::size_t>(i)];
    out.line(json{{"type", "sample"},
                  {"index", i},
                  {"alpha", r.alpha},
                  {"head_end", r.head_end},
                  {"tail_start", r.tail_start},
                  {"unimodal", r.unimodal},
                  {"olc", r.olc}});
    alpha_sum += static_cast<double>(r.alpha) / n;
    unimodal_count += r.unimodal;
    olc_count += r.olc;
    min_head = std::min(min_head, r.head_end);
    max_tail = std::max(max_tail, r.tail_start);
  }
  out.line(json{{"type", "summary"},
                {"mean_alpha_over_n", alpha_sum / static_cast<double>(samples)},
                {"min_head_end", min_head},
                {"max_tail_start", max_tail},
                {"frac_unimodal", static_cast<double>(unimodal_count) / samples},
                {"frac_olc", static_cast<double>(olc_count) / samples}});
  return 0;
}

// ---- formulas / oracle ----------------------------------------------

int run_formulas(int n, long k_opt, bool with_oracle, const std::string& out_path) {
  Output out;
  out.open(out_path);
  out.line(json{{"format", kFormatTag}, {"command", "formulas"}, {"n", n}, {"oracle", with_oracle}});
  bool mismatch = false;
  const long k_lo = k_opt > 0 ? k_opt : 1;
  const long k_hi = k_opt > 0 ? k_opt : n - 1;
  for (long k = k_lo; k <= k_hi; ++k) {
    std::optional<ExtensionProfile> brute;
    if (with_oracle) brute = brute_force_profile(n, k);
    for (long t = 0; t <= n - k; ++t) {
      const Rational e = e_nkt(n, k, t);
      json rec{{"type", "e"}, {"n", n}, {"k", k}, {"t", t}, {"e", rational_json(e)},
               {"f", rational_json(f_nkt_alternating(n, k, t))}};
      if (k + t < n) rec["f_stirling"] = rational_json(f_nkt_stirling(n, k, t));
      if (brute) {
        rec["oracle"] = rational_json(brute->probs[static_cast<std::size_t>(t)]);
        if (brute->probs[static_cast<std::size_t>(t)] != e) {
          rec["mismatch"] = true;
          mismatch = true;
        }
      }
      out.line(rec);
    }
    json grec{{"type", "g"}, {"n", n}, {"k", k}, {"expected_ik", rational_json(expected_ik(n, k))}};
    if (k + 2 <= n) {
      grec["g1"] = rational_json(g1(n, k));
      grec["g2"] = rational_json(g2(n, k));
    }
    out.line(grec);
  }
  out.line(json{{"type", "summary"}, {"mismatch", mismatch}});
  return mismatch ? 1 : 0;
}

int run_oracle(int n, long k_opt, const std::string& out_path) {
  Output out;
  out.open(out_path);
  out.line(json{{"format", "indseq.fixture/1"}, {"command", "oracle"}, {"n", n}});
  const long k_lo = k_opt > 0 ? k_opt : 1;
  const long k_hi = k_opt > 0 ? k_opt : n - 1;
  for (long k = k_lo; k <= k_hi; ++k) {
    auto profile = brute_force_profile(n, k);
    for (long t = 0; t <= n - k; ++t) {
      const Rational& e = profile.probs[static_cast<std::size_t>(t)];
      out.line(json{{"n", n},
                    {"k", k},
                    {"t", t},
                    {"num", e.get_num().get_str()},
                    {"den", e.get_den().get_str()}});
    }
  }
  return 0;
}

// ---- certify / heuristic ---------------------------------------------

int run_certify(const std::string& regime_name, long M, long p_lo, long p_hi, double margin,
                const std::string& schedule_csv, const std::string& replay_path,
                const std::string& out_path, int jobs) {
  if (!replay_path.empty()) {
    std::ifstream in(replay_path);
    if (!in) {
      std::cerr << "cannot open certificate: " << replay_path << "\n";
      return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    ReplayResult res = replay(cert_from_json(buffer.str()));
    for (const auto& p : res.problems) std::cerr << "replay: " << p << "\n";
    std::cout << (res.ok ? "certificate ok" : "certificate INVALID") << "\n";
    return res.ok ? 0 : 1;
  }
  const Regime regime = regime_name == "tail" ? Regime::tail : Regime::head;
  CertReport report;
  if (!schedule_csv.empty()) {
    std::vector<long> schedule;
    std::istringstream in(schedule_csv);
    std::string item;
    while (std::getline(in, item, ',')) schedule.push_back(std::stol(item));
    report = bootstrap(schedule, regime, margin, jobs);
  } else {
    if (p_lo <= 0) p_lo = regime == Regime::head ? (M + 9) / 10 : (34 * M) / 100;
    if (p_hi <= 0) p_hi = regime == Regime::head ? (4 * M) / 10 : (362 * M) / 1000;
    report = regime == Regime::head ? certify_head(M, p_lo, p_hi, margin, jobs)
                                    : certify_tail(M, p_lo, p_hi, margin, jobs);
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << cert_to_json(report) << "\n";
  }
  for (const auto& st : report.stages)
    std::cout << "M=" << st.M << " verified p in [" << st.verified_lo << ", " << st.verified_hi
              << "]\n";
  std::cout << "final constant " << report.final_num << "/" << report.final_den << " = "
            << static_cast<double>(report.final_num) / static_cast<double>(report.final_den)
            << (report.chain_ok ? "" : "  (CHAIN BROKEN)") << "\n";
  return report.chain_ok ? 0 : 1;
}

int run_heuristic(const std::string& regime_name, double resolution, const std::string& csv_path,
                  const std::string& out_path) {
  Output out;
  out.open(out_path);
  out.line(json{{"format", kFormatTag}, {"command", "heuristic"}, {"resolution", resolution}});
  if (regime_name == "head" || regime_name == "both") {
    auto b = heuristic_head_threshold(resolution);
    out.line(json{{"type", "threshold"}, {"regime", "head"}, {"pass", b.pass}, {"fail", b.fail}});
  }
  if (regime_name == "tail" || regime_name == "both") {
    auto b = heuristic_tail_threshold(resolution);
    out.line(json{{"type", "threshold"}, {"regime", "tail"}, {"pass", b.pass}, {"fail", b.fail}});
  }
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    csv << "regime,kappa,tau_star,log2_ratio\n";
    for (double kappa = 0.10; kappa < 0.299; kappa += 0.001) {
      auto s = sup_ratio(Regime::head, kappa);
      csv << "head," << kappa << "," << s.tau_star << "," << s.log2_ratio << "\n";
    }
    for (double kappa = 0.301; kappa < 0.45; kappa += 0.001) {
      auto s = sup_ratio(Regime::tail, kappa);
      csv << "tail," << kappa << "," << s.tau_star << "," << s.log2_ratio << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact independent-set sequence toolkit for trees"};
  app.require_subcommand(1);

  std::string n_range = "1..14";
  std::string props_csv = "unimodal,olc";
  std::string tree_path, prufer_path, out_path;
  int jobs = 0;

  auto* verify = app.add_subcommand("verify", "exhaustively check properties over free trees");
  verify->add_option("--n", n_range, "vertex count or range, e.g. 4 or 1..20");
  verify->add_option("--props", props_csv,
                     "comma list: unimodal,lc,olc,ulc,realroots,thm2,thm5,fisher-ryan,zykov,wingard");
  verify->add_option("--tree", tree_path, "check a single tree from an edge-list file");
  verify->add_option("--prufer", prufer_path, "check a single tree given by its Prufer code");
  verify->add_option("--out", out_path, "report file (default stdout)");
  verify->add_option("--jobs", jobs, "worker threads (0 = auto)");

  int sample_n = 1000;
  long samples = 200;
  std::uint64_t seed = 1;
  auto* sample = app.add_subcommand("sample", "statistics of uniform random labelled trees");
  sample->add_option("--n", sample_n, "vertex count")->required();
  sample->add_option("--samples", samples, "number of trees");
  sample->add_option("--seed", seed, "master seed");
  sample->add_option("--out", out_path, "report file (default stdout)");
  sample->add_option("--jobs", jobs, "worker threads (0 = auto)");

  int formulas_n = 8;
  long formulas_k = 0;
  bool with_oracle = false;
  auto* formulas = app.add_subcommand("formulas", "exact e/f/g tables");
  formulas->add_option("--n", formulas_n, "number of vertices")->required();
  formulas->add_option("--k", formulas_k, "restrict to one k");
  formulas->add_flag("--oracle", with_oracle, "cross-check against the brute-force profile");
  formulas->add_option("--out", out_path, "report file (default stdout)");

  int oracle_n = 7;
  long oracle_k = 0;
  auto* oracle = app.add_subcommand("oracle", "brute-force fixture tables over all labelled trees");
  oracle->add_option("--n", oracle_n, "number of vertices (2..9)")->required();
  oracle->add_option("--k", oracle_k, "restrict to one k");
  oracle->add_option("--out", out_path, "fixture file (default stdout)");

  std::string regime = "head";
  long cert_M = 100, p_lo = 0, p_hi = 0;
  double margin = kDefaultMargin;
  std::string schedule_csv, replay_path;
  auto* certify = app.add_subcommand("certify", "interval certification of the comparison bounds");
  certify->add_option("--regime", regime, "head or tail");
  certify->add_option("--M", cert_M, "grid size");
  certify->add_option("--p-lo", p_lo, "first p (default: regime anchor)");
  certify->add_option("--p-hi", p_hi, "last p (default: regime anchor)");
  certify->add_option("--margin", margin, "strict-inequality slack (default 1e-6)");
  certify->add_option("--bootstrap", schedule_csv, "comma list of stage grid sizes");
  certify->add_option("--replay", replay_path, "re-check a serialized certificate");
  certify->add_option("--out", out_path, "certificate file");
  certify->add_option("--jobs", jobs, "worker threads (0 = auto)");

  double resolution = 1e-5;
  std::string csv_path;
  auto* heuristic = app.add_subcommand("heuristic", "floating-point threshold search");
  heuristic->add_option("--regime", regime, "head, tail, or both")->default_val("both");
  heuristic->add_option("--resolution", resolution, "kappa grid resolution");
  heuristic->add_option("--csv", csv_path, "emit a (kappa, tau*, ratio) table");
  heuristic->add_option("--out", out_path, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed())
      return run_verify(n_range, props_csv, tree_path, prufer_path, out_path, jobs);
    if (sample->parsed()) return run_sample(sample_n, samples, seed, out_path, jobs);
    if (formulas->parsed()) return run_formulas(formulas_n, formulas_k, with_oracle, out_path);
    if (oracle->parsed()) return run_oracle(oracle_n, oracle_k, out_path);
    if (certify->parsed())
      return run_certify(regime, cert_M, p_lo, p_hi, margin, schedule_csv, replay_path, out_path,
                         jobs);
    if (heuristic->parsed()) return run_heuristic(regime, resolution, csv_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
