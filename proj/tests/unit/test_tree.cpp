#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "indseq/free_trees.hpp"
#include "indseq/rng.hpp"
#include "indseq/tree.hpp"

using namespace indseq;

namespace {

std::set<std::pair<int, int>> edge_set(const Tree& t) {
  std::set<std::pair<int, int>> s;
  for (auto [u, v] : t.edges) s.insert({std::min(u, v), std::max(u, v)});
  return s;
}

// Subset brute force over bitmasks, the independent oracle for the DP.
std::vector<std::uint64_t> brute_iseq(const Tree& t) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(t.n) + 1, 0);
  for (auto [u, v] : t.edges) {
    adj[static_cast<std::size_t>(u)] |= 1u << v;
    adj[static_cast<std::size_t>(v)] |= 1u << u;
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(t.n) + 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << t.n); ++mask) {
    bool ok = true;
    for (int v = 1; v <= t.n && ok; ++v)
      if ((mask >> (v - 1)) & 1u)
        ok = (adj[static_cast<std::size_t>(v)] & (mask << 1)) == 0;  // adj uses bit v for vertex v
    if (!ok) continue;
    ++counts[static_cast<std::size_t>(__builtin_popcount(mask))];
  }
  while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
  return counts;
}

Tree star4() { return Tree{4, {{1, 2}, {1, 3}, {1, 4}}}; }
Tree path(int n) {
  Tree t{n, {}};
  for (int v = 1; v < n; ++v) t.edges.emplace_back(v, v + 1);
  return t;
}

}  // namespace

TEST_CASE("prufer decoding of standard examples") {
  auto star = prufer_decode({1, 1});
  CHECK(star.n == 4);
  CHECK(edge_set(star) == edge_set(star4()));

  auto two = prufer_decode({});
  CHECK(two.n == 2);
  CHECK(edge_set(two) == std::set<std::pair<int, int>>{{1, 2}});

  CHECK_THROWS(prufer_decode({0, 1}));
  CHECK_THROWS(prufer_decode({5, 1}));
}

TEST_CASE("all 16 codes for n = 4 give 16 distinct trees") {
  std::set<std::set<std::pair<int, int>>> trees;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) trees.insert(edge_set(prufer_decode({a, b})));
  CHECK(trees.size() == 16);
}

TEST_CASE("prufer round trip") {
  SplitMix64 rng(5150);
  for (int it = 0; it < 300; ++it) {
    const int n = 2 + static_cast<int>(rng.below(499));
    PruferCode code(static_cast<std::size_t>(std::max(0, n - 2)));
    for (auto& a : code) a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))) + 1;
    Tree t = prufer_decode(code);
    validate_tree(t);
    CHECK(prufer_encode(t) == code);
  }
  for (int it = 0; it < 200; ++it) {
    Tree t = random_tree(2 + static_cast<int>(rng.below(60)), rng.next());
    CHECK(edge_set(prufer_decode(prufer_encode(t))) == edge_set(t));
  }
}

TEST_CASE("independence sequence: knowns and oracle") {
  CHECK(independence_sequence(Tree{1, {}}) == CountSequence({BigInt(1), BigInt(1)}));
  CHECK(independence_sequence(star4()) ==
        CountSequence({BigInt(1), BigInt(4), BigInt(3), BigInt(1)}));
  // Paths: i_k = C(n-k+1, k).
  for (int n = 1; n <= 12; ++n) {
    auto s = independence_sequence(path(n));
    for (std::size_t k = 0; k < s.size(); ++k)
      CHECK(s[k] == binomial(n - static_cast<long>(k) + 1, static_cast<long>(k)));
  }
  // Brute-force agreement on every free tree with <= 10 vertices.
  for (int n = 1; n <= 10; ++n) {
    enumerate_free_trees(n, [&](std::span<const int> parent) {
      Tree t = tree_from_parents(parent);
      auto dp = independence_sequence(t);
      auto ref = brute_iseq(t);
      REQUIRE(dp.size() == ref.size());
      for (std::size_t k = 0; k < ref.size(); ++k)
        CHECK(dp[k] == BigInt(static_cast<unsigned long>(ref[k])));
      // u64 fast path agrees with the BigInt route.
      std::vector<std::uint64_t> fast_counts;
      independence_counts_u64(parents_from_tree(t), fast_counts);
      REQUIRE(fast_counts.size() == ref.size());
      for (std::size_t k = 0; k < ref.size(); ++k) CHECK(fast_counts[k] == ref[k]);
    });
  }
  // And on random labelled trees at n = 12.
  SplitMix64 rng(88);
  for (int it = 0; it < 50; ++it) {
    Tree t = random_tree(12, rng.next());
    auto dp = independence_sequence(t);
    auto ref = brute_iseq(t);
    REQUIRE(dp.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k)
      CHECK(dp[k] == BigInt(static_cast<unsigned long>(ref[k])));
  }
}

namespace {

// Brute-force alpha / mu / minimum maximal independent set via bitmasks.
struct BruteStats {
  int alpha = 0;
  int mu = 0;
  int min_maximal = 0;
};

BruteStats brute_stats(const Tree& t) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(t.n) + 1, 0);
  for (auto [u, v] : t.edges) {
    adj[static_cast<std::size_t>(u)] |= 1u << v;
    adj[static_cast<std::size_t>(v)] |= 1u << u;
  }
  BruteStats st;
  st.min_maximal = t.n + 1;
  for (std::uint32_t mask = 0; mask < (1u << t.n); ++mask) {
    bool independent = true;
    std::uint32_t closed = 0;
    for (int v = 1; v <= t.n && independent; ++v)
      if ((mask >> (v - 1)) & 1u) {
        if (adj[static_cast<std::size_t>(v)] & (mask << 1)) independent = false;
        closed |= adj[static_cast<std::size_t>(v)] >> 1;
      }
    if (!independent) continue;
    const int size = __builtin_popcount(mask);
    st.alpha = std::max(st.alpha, size);
    if ((mask | closed) == (1u << t.n) - 1) st.min_maximal = std::min(st.min_maximal, size);
  }
  // Matchings: subsets of edges, pairwise disjoint.
  const int m = static_cast<int>(t.edges.size());
  for (std::uint32_t emask = 0; emask < (1u << m); ++emask) {
    std::uint32_t used = 0;
    bool ok = true;
    for (int e = 0; e < m && ok; ++e)
      if ((emask >> e) & 1u) {
        const std::uint32_t pair = (1u << (t.edges[static_cast<std::size_t>(e)].first - 1)) |
                                   (1u << (t.edges[static_cast<std::size_t>(e)].second - 1));
        if (used & pair) ok = false;
        used |= pair;
      }
    if (ok) st.mu = std::max(st.mu, __builtin_popcount(emask));
  }
  return st;
}

}  // namespace

TEST_CASE("tree stats: examples and brute force") {
  auto s4 = tree_stats(star4());
  CHECK(s4.alpha == 3);
  CHECK(s4.mu == 1);
  CHECK(s4.min_maximal_is == 1);

  auto p4 = tree_stats(path(4));
  CHECK(p4.alpha == 2);
  CHECK(p4.mu == 2);
  CHECK(p4.min_maximal_is == 2);

  for (int n = 1; n <= 9; ++n) {
    enumerate_free_trees(n, [&](std::span<const int> parent) {
      Tree t = tree_from_parents(parent);
      auto st = tree_stats(t);
      auto ref = brute_stats(t);
      CHECK(st.alpha == ref.alpha);
      CHECK(st.mu == ref.mu);
      CHECK(st.min_maximal_is == ref.min_maximal);
      CHECK(st.alpha + st.mu == t.n);  // Koenig-Egervary
      CHECK(st.iseq[0] == 1);
      if (t.n >= 2) CHECK(st.iseq[1] == t.n);
    });
  }
  SplitMix64 rng(4711);
  for (int n : {13, 14}) {
    for (int it = 0; it < 40; ++it) {
      Tree t = random_tree(n, rng.next());
      auto st = tree_stats(t);
      auto ref = brute_stats(t);
      CHECK(st.alpha == ref.alpha);
      CHECK(st.mu == ref.mu);
      CHECK(st.min_maximal_is == ref.min_maximal);
    }
  }
}

TEST_CASE("count_extensions") {
  CHECK(count_extensions(star4(), {}) == 4);
  CHECK(count_extensions(star4(), {1}) == 0);
  CHECK(count_extensions(path(4), {2}) == 1);
  CHECK_THROWS(count_extensions(star4(), {1, 2}));
  CHECK_THROWS(count_extensions(star4(), {1, 1}));

  // Counting-edges identity: sum over size-j sets of e(I) = (j+1) i_{j+1}.
  SplitMix64 rng(31337);
  for (int it = 0; it < 25; ++it) {
    const int n = 2 + static_cast<int>(rng.below(11));
    Tree t = random_tree(n, rng.next());
    auto iseq = independence_sequence(t);
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : t.edges) {
      adj[static_cast<std::size_t>(u)] |= 1u << v;
      adj[static_cast<std::size_t>(v)] |= 1u << u;
    }
    std::vector<std::uint64_t> ext_sum(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      bool independent = true;
      std::uint32_t blocked = mask << 1;
      for (int v = 1; v <= n && independent; ++v)
        if ((mask >> (v - 1)) & 1u) {
          if (adj[static_cast<std::size_t>(v)] & (mask << 1)) independent = false;
          blocked |= adj[static_cast<std::size_t>(v)];
        }
      if (!independent) continue;
      const int ext = n - __builtin_popcount((blocked >> 1) & ((1u << n) - 1));
      ext_sum[static_cast<std::size_t>(__builtin_popcount(mask))] +=
          static_cast<std::uint64_t>(ext);
    }
    for (std::size_t j = 0; j + 1 < iseq.size(); ++j)
      CHECK(BigInt(static_cast<unsigned long>(ext_sum[j])) == BigInt(j + 1) * iseq[j + 1]);
  }
}

TEST_CASE("uniformity of random trees on 4 vertices") {
  // 10^5 samples over the 16 labelled trees; chi-square with 15 degrees of
  // freedom stays below the 99% quantile 30.578.
  std::map<std::set<std::pair<int, int>>, long> freq;
  const long samples = 100000;
  SplitMix64 master(20230401);
  for (long i = 0; i < samples; ++i) freq[edge_set(random_tree(4, master.next()))]++;
  REQUIRE(freq.size() == 16);
  double chi2 = 0;
  const double expected = samples / 16.0;
  for (const auto& [_, count] : freq) {
    const double d = static_cast<double>(count) - expected;
    chi2 += d * d / expected;
  }
  CHECK(chi2 < 30.578);
}

TEST_CASE("tree text formats") {
  const std::string text = "4\n1 2\n1 3\n1 4\n";
  CHECK(edge_set(parse_tree_text(text)) == edge_set(star4()));
  CHECK(parse_tree_text(format_tree_text(star4())).n == 4);
  CHECK(edge_set(parse_prufer_text("1 1")) == edge_set(star4()));
  CHECK(parse_prufer_text("").n == 2);
  CHECK_THROWS(parse_tree_text("3\n1 2\n"));    // missing edge
  CHECK_THROWS(parse_tree_text("3\n1 2\n1 2")); // cycle
}
