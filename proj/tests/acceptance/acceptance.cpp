// Acceptance suite: one pass/fail line per criterion, exit 1 on any
// failure.  Heavy sweeps stream trees through worker threads.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "indseq/asymptotics.hpp"
#include "indseq/certifier.hpp"
#include "indseq/counting.hpp"
#include "indseq/free_trees.hpp"
#include "indseq/parallel.hpp"
#include "indseq/rng.hpp"
#include "indseq/sequence.hpp"
#include "indseq/tree.hpp"
#include "indseq/verify.hpp"

using namespace indseq;
using json = nlohmann::json;

namespace {

int g_failures = 0;
std::string g_fixture_dir = "tests/fixtures";
std::string g_cert_dir = "certs";

struct Criterion {
  const char* name;
  bool ok = true;
  std::string detail;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Criterion(const char* n) : name(n) {}
  void fail(const std::string& why) {
    ok = false;
    if (detail.empty()) detail = why;
  }
  void finish() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok) {
      std::printf("[PASS] %-28s (%.1fs)\n", name, secs);
    } else {
      std::printf("[FAIL] %-28s (%.1fs) %s\n", name, secs, detail.c_str());
      ++g_failures;
    }
    std::fflush(stdout);
  }
};

// Streams every free tree on n vertices through `fn` on two worker
// threads; fn must be thread-safe.
void for_each_free_tree_parallel(int n, const std::function<void(std::span<const int>)>& fn) {
  const int workers = worker_count(0);
  std::vector<std::vector<int>> batch;
  std::vector<std::thread> pool;
  auto flush = [&]() {
    const std::size_t count = batch.size();
    pool.clear();
    for (int w = 0; w < workers; ++w) {
      const std::size_t b = count * static_cast<std::size_t>(w) / static_cast<std::size_t>(workers);
      const std::size_t e = count * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(workers);
      pool.emplace_back([&, b, e]() {
        for (std::size_t i = b; i < e; ++i) fn(batch[i]);
      });
    }
    for (auto& th : pool) th.join();
    batch.clear();
  };
  enumerate_free_trees(n, [&](std::span<const int> parent) {
    batch.emplace_back(parent.begin(), parent.end());
    if (batch.size() >= 8192) flush();
  });
  flush();
}

// --- C1: every free tree with <= 20 vertices is unimodal and ordered
// log-concave (823065 trees at n = 20 alone).
void radcliffe_sweep() {
  Criterion c("unimodal+olc n<=20");
  const std::uint64_t expected_n20 = 823065;
  std::uint64_t n20 = 0;
  for (int n = 1; n <= 20; ++n) {
    std::atomic<std::uint64_t> bad{0};
    std::atomic<std::uint64_t> count{0};
    for_each_free_tree_parallel(n, [&](std::span<const int> parent) {
      thread_local TreeChecker local({TreeProp::unimodal, TreeProp::ordered_log_concave});
      count.fetch_add(1, std::memory_order_relaxed);
      if (local.check(parent)) bad.fetch_add(1);
    });
    if (bad.load() != 0) c.fail("counterexample at n=" + std::to_string(n));
    if (n == 20) n20 = count.load();
  }
  if (n20 != expected_n20)
    c.fail("free tree count at n=20 was " + std::to_string(n20) + ", expected 823065");
  c.finish();
}

// --- C2: the 4-star's sequence fails ultra log-concavity.
void star_ulc() {
  Criterion c("4-star fails ultra-LC");
  CountSequence star({BigInt(1), BigInt(4), BigInt(3), BigInt(1)});
  if (is_ultra_log_concave(star)) c.fail("(1,4,3,1) was reported ultra log-concave");
  if (!is_ordered_log_concave(star)) c.fail("(1,4,3,1) must stay ordered log-concave");
  c.finish();
}

// --- C3: e_nkt equals the brute-force profile over all n^{n-2} trees for
// every (k,t), n in 3..8, with exact rational equality; also diffed
// against the frozen fixture files.
void oracle_equivalence() {
  Criterion c("oracle equivalence n=3..8");
  for (long n = 3; n <= 8; ++n) {
    std::ifstream fixture(g_fixture_dir + "/profile_n" + std::to_string(n) + ".jsonl");
    std::vector<std::vector<Rational>> frozen(static_cast<std::size_t>(n));
    if (fixture) {
      std::string line;
      while (std::getline(fixture, line)) {
        json rec = json::parse(line);
        if (!rec.contains("num")) continue;
        const long k = rec.at("k").get<long>();
        auto& row = frozen[static_cast<std::size_t>(k)];
        row.emplace_back(Rational(rec.at("num").get<std::string>() + "/" +
                                  rec.at("den").get<std::string>()));
        row.back().canonicalize();
      }
    } else {
      c.fail("missing fixture for n=" + std::to_string(n));
    }
    for (long k = 1; k < n; ++k) {
      auto brute = brute_force_profile(n, k);
      for (long t = 0; t <= n - k; ++t) {
        const Rational formula = e_nkt(n, k, t);
        if (formula != brute.probs[static_cast<std::size_t>(t)]) {
          c.fail("mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                 " t=" + std::to_string(t));
        }
        const auto& row = frozen[static_cast<std::size_t>(k)];
        if (!row.empty() && (static_cast<std::size_t>(t) >= row.size() ||
                             row[static_cast<std::size_t>(t)] != formula))
          c.fail("fixture drift at n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
    }
  }
  c.finish();
}

// --- C4: Claim 10's closed form equals the brute-force |T_{K,L}|.
void claim10_equivalence() {
  Criterion c("closed-form |T_KL| n=3..8");
  for (long n = 3; n <= 8; ++n)
    for (long k = 1; k < n; ++k)
      for (long l = 0; k + l <= n; ++l)
        if (trees_with_independent_set_avoiding(n, k, l) != brute_force_trees_with_kl(n, k, l))
          c.fail("mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                 " l=" + std::to_string(l));
  c.finish();
}

// --- C5: the Stirling route equals the alternating route, n <= 25.
void stirling_route() {
  Criterion c("f routes agree n<=25");
  for (long n = 2; n <= 25; ++n)
    for (long k = 1; k < n; ++k)
      for (long t = 0; k + t < n; ++t)
        if (f_nkt_alternating(n, k, t) != f_nkt_stirling(n, k, t))
          c.fail("mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                 " t=" + std::to_string(t));
  c.finish();
}

// --- C6: marginalization sum_t e(n,k,t) = (1-k/n)^{k-1}, n <= 25.
void marginalization() {
  Criterion c("marginalization n<=25");
  for (long n = 2; n <= 25; ++n)
    for (long k = 1; k < n; ++k) {
      Rational total(0);
      for (long t = 0; t <= n - k; ++t) total += e_nkt(n, k, t);
      if (total != rational_pow(make_rational(BigInt(n - k), BigInt(n)), k - 1))
        c.fail("failure at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  c.finish();
}

// --- C7: proved-theorem suite over every free tree with <= 14 vertices.
void theorem_suite() {
  Criterion c("theorem suite n<=14");
  for (int n = 1; n <= 14; ++n) {
    std::atomic<std::uint64_t> bad{0};
    for_each_free_tree_parallel(n, [&](std::span<const int> parent) {
      thread_local TreeChecker checker({TreeProp::tail_theorem, TreeProp::head_theorem,
                                        TreeProp::wingard, TreeProp::fisher_ryan,
                                        TreeProp::zykov});
      if (checker.check(parent)) {
        bad.fetch_add(1);
        return;
      }
      const auto& iseq = checker.last_sequence();
      // alpha + mu = n (Koenig-Egervary).
      const RootedStats stats = rooted_stats(parent);
      if (stats.alpha + stats.mu != n || stats.alpha + 1 != static_cast<long>(iseq.size())) {
        bad.fetch_add(1);
        return;
      }
      // Counting-edges identity via subset enumeration on bitmasks.
      std::vector<std::uint32_t> adj(parent.size(), 0);
      for (std::size_t v = 1; v < parent.size(); ++v) {
        adj[v] |= 1u << parent[v];
        adj[static_cast<std::size_t>(parent[v])] |= 1u << v;
      }
      std::vector<std::uint64_t> ext_sum(parent.size() + 1, 0);
      const std::uint32_t full = (1u << n) - 1;
      for (std::uint32_t mask = 0; mask <= full; ++mask) {
        std::uint32_t blocked = mask;
        bool independent = true;
        for (int v = 0; v < n && independent; ++v)
          if ((mask >> v) & 1u) {
            if (adj[static_cast<std::size_t>(v)] & mask) independent = false;
            blocked |= adj[static_cast<std::size_t>(v)];
          }
        if (!independent) continue;
        ext_sum[static_cast<std::size_t>(__builtin_popcount(mask))] +=
            static_cast<std::uint64_t>(n - __builtin_popcount(blocked));
      }
      for (std::size_t j = 0; j + 1 < iseq.size(); ++j)
        if (ext_sum[j] != (j + 1) * iseq[j + 1]) {
          bad.fetch_add(1);
          return;
        }
    });
    if (bad.load() != 0) c.fail("violation at n=" + std::to_string(n));
  }
  c.finish();
}

// --- C8: heuristic thresholds bracket the published constants at 1e-5.
void heuristic_thresholds() {
  Criterion c("heuristic thresholds 1e-5");
  const auto head = heuristic_head_threshold(1e-5);
  if (std::fabs(head.pass - 0.28098) > 1e-9 || std::fabs(head.fail - 0.28099) > 1e-9)
    c.fail("head bracket was [" + std::to_string(head.pass) + ", " + std::to_string(head.fail) + ")");
  const auto tail = heuristic_tail_threshold(1e-5);
  if (std::fabs(tail.pass - 0.34667) > 1e-9 || std::fabs(tail.fail - 0.34666) > 1e-9)
    c.fail("tail bracket was [" + std::to_string(tail.pass) + ", " + std::to_string(tail.fail) + ")");
  c.finish();
}

// --- C9: desk-scale certification reproduces the published p ranges.
void certifier_desk_scale() {
  Criterion c("certified ranges M=100,1000");
  CertReport r100 = certify_head(100, 9, 30, kDefaultMargin);
  if (r100.stages[0].verified_lo != 10 || r100.stages[0].verified_hi != 23)
    c.fail("M=100 verified [" + std::to_string(r100.stages[0].verified_lo) + ", " +
           std::to_string(r100.stages[0].verified_hi) + "], expected [10, 23]");
  CertReport r1000 = certify_head(1000, 230, 300, kDefaultMargin);
  if (r1000.stages[0].verified_lo != 230 || r1000.stages[0].verified_hi != 274)
    c.fail("M=1000 verified [" + std::to_string(r1000.stages[0].verified_lo) + ", " +
           std::to_string(r1000.stages[0].verified_hi) + "], expected [230, 274]");
  c.finish();
}

// --- C10: the persisted full-scale certificates replay-verify and carry
// the published constants; the live bootstraps are cheap enough to rerun
// here as a cross-check.
void full_scale_certificates() {
  Criterion c("full-scale certificates");
  auto load = [&](const std::string& name) -> CertReport {
    std::ifstream in(g_cert_dir + "/" + name);
    if (!in) throw std::runtime_error("missing certificate " + name);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return cert_from_json(buffer.str());
  };
  try {
    CertReport head = load("head-400000.json");
    if (!replay(head).ok) c.fail("head certificate failed replay");
    if (!head.chain_ok) c.fail("head chain broken");
    const auto& last = head.stages.back();
    if (last.M != 400000 || last.verified_hi != 112384)
      c.fail("head certificate does not verify p <= 112384 at M=400000");
    if (head.final_num * 100000L != 28096L * head.final_den)
      c.fail("head constant is not 0.28096");

    CertReport tail = load("tail-1000000.json");
    if (!replay(tail).ok) c.fail("tail certificate failed replay");
    if (!tail.chain_ok) c.fail("tail chain broken");
    // p_min / M <= 0.34668, compared exactly.
    if (tail.final_num * 100000L > 34668L * tail.final_den)
      c.fail("tail constant exceeds 0.34668");
  } catch (const std::exception& e) {
    c.fail(e.what());
  }
  // Live cross-check (the staged runs are fast).
  CertReport head_live = bootstrap({100, 1000, 10000, 100000, 400000}, Regime::head);
  if (!head_live.chain_ok || head_live.final_num != 112384 || head_live.final_den != 400000)
    c.fail("live head bootstrap disagrees with the certificate");
  CertReport tail_live = bootstrap({1000, 10000, 100000, 1000000}, Regime::tail);
  if (!tail_live.chain_ok || tail_live.final_num * 100000L > 34668L * tail_live.final_den)
    c.fail("live tail bootstrap missed the 0.34668 target");
  c.finish();
}

// --- C11: random-tree statistics at n = 1000 with a fixed seed.
void random_tree_statistics() {
  Criterion c("random tree stats n=1000");
  const int n = 1000;
  const long samples = 200;
  const std::uint64_t seed = 20240817;
  std::vector<long> alpha(samples), head_end(samples), tail_start(samples);
  parallel_for(0, samples, 0, [&](long i) {
    auto rng = SplitMix64::for_item(seed, static_cast<std::uint64_t>(i));
    Tree t = random_tree(n, rng.next());
    CountSequence iseq = independence_sequence(t);
    alpha[static_cast<std::size_t>(i)] = iseq.last_nonzero_index();
    const auto& a = iseq.terms();
    std::size_t k = 1;
    while (k < a.size() && a[k - 1] <= a[k]) ++k;
    head_end[static_cast<std::size_t>(i)] = static_cast<long>(k) - 1;
    std::size_t j = a.size() - 1;
    while (j > 0 && a[j - 1] >= a[j]) --j;
    tail_start[static_cast<std::size_t>(i)] = static_cast<long>(j);
  });
  double mean_alpha = 0;
  for (long i = 0; i < samples; ++i) mean_alpha += static_cast<double>(alpha[static_cast<std::size_t>(i)]);
  mean_alpha /= static_cast<double>(samples) * n;
  if (std::fabs(mean_alpha - 0.5671) > 0.02)
    c.fail("mean alpha/n = " + std::to_string(mean_alpha));
  const long tail_bound = static_cast<long>(std::ceil(0.39 * n));
  const long head_bound = static_cast<long>(std::floor(0.27 * n));
  for (long i = 0; i < samples; ++i) {
    if (tail_start[static_cast<std::size_t>(i)] > tail_bound)
      c.fail("sample " + std::to_string(i) + " not decreasing from index " +
             std::to_string(tail_bound));
    if (head_end[static_cast<std::size_t>(i)] < head_bound)
      c.fail("sample " + std::to_string(i) + " not increasing to index " +
             std::to_string(head_bound));
  }
  c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--fixtures") g_fixture_dir = argv[i + 1];
    if (flag == "--certs") g_cert_dir = argv[i + 1];
  }
  radcliffe_sweep();
  star_ulc();
  oracle_equivalence();
  claim10_equivalence();
  stirling_route();
  marginalization();
  theorem_suite();
  heuristic_thresholds();
  certifier_desk_scale();
  full_scale_certificates();
  random_tree_statistics();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
