#include "indseq/counting.hpp"

#include <cstdint>
#include <stdexcept>

namespace indseq {

namespace {

void check_nk(long n, long k, long t) {
  if (n < 1 || k < 1 || t < 0 || k + t > n)
    throw std::invalid_argument("counting: need n >= 1, k >= 1, t >= 0, k + t <= n");
}

Rational one_minus_over(long a, long n) {  // 1 - a/n
  return make_rational(BigInt(n - a), BigInt(n));
}

}  // namespace

BigInt trees_with_independent_set_avoiding(long n, long k, long l) {
  if (n < 1 || k < 1 || l < 0 || k + l > n)
    throw std::invalid_argument("trees_with_independent_set_avoiding: bad parameters");
  if (k == n) {
    // Only n = 1 has a tree with all of {1..n} independent.
    if (l == 0 && n > 1)
      throw std::invalid_argument(
          "trees_with_independent_set_avoiding: k = n > 1 is outside the formula's range");
    return n == 1 ? 1 : 0;
  }
  Rational r = rational_pow(Rational(n), n - k - l - 1) *
               rational_pow(Rational(n - k), l - 1) *
               rational_pow(Rational(n - k - l), k);
  if (r.get_den() != 1)
    throw std::logic_error("trees_with_independent_set_avoiding: non-integer result");
  return r.get_num();
}

Rational e_nkt(long n, long k, long t) {
  check_nk(n, k, t);
  if (k == n) return n == 1 ? Rational(1) : Rational(0);
  Rational sum(0);
  const long reach = n - k - t;
  for (long l = 0; l <= reach; ++l) {
    Rational term = Rational(binomial(reach, l)) *
                    rational_pow(one_minus_over(k, n), t + l - 1) *
                    rational_pow(one_minus_over(k + t + l, n), k);
    if (l % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return Rational(binomial(n - k, t)) * sum;
}

Rational f_nkt_alternating(long n, long k, long t) {
  return Rational(binomial(n, k)) * e_nkt(n, k, t);
}

Rational f_nkt_stirling(long n, long k, long t) {
  check_nk(n, k, t);
  if (k + t == n)
    throw std::invalid_argument("f_nkt_stirling: requires k + t < n");
  const long reach = n - k - t;
  Rational a = Rational(binomial(n, k)) * Rational(binomial(n - k, t)) *
               rational_pow(one_minus_over(k, n), t - 1) *
               rational_pow(one_minus_over(k + t, n), k);
  Rational sum(0);
  const Rational n_over_k = make_rational(BigInt(n), BigInt(k));
  for (long j = 1; j <= k; ++j) {
    if (j > reach) break;  // falling power vanishes
    sum += Rational(stirling2(k, j)) * Rational(falling_power(reach, j)) *
           rational_pow(n_over_k, j);
  }
  return a * rational_pow(make_rational(BigInt(k), BigInt(n)), reach) *
         rational_pow(Rational(reach), -k) * sum;
}

Rational g1(long n, long k) {
  if (k < 1 || k + 2 > n) throw std::invalid_argument("g1: need 1 <= k <= n - 2");
  Rational sum(0);
  for (long t = 0; t <= std::min(k + 1, n - k); ++t) sum += e_nkt(n, k, t);
  return Rational(binomial(n, k)) * sum;
}

Rational g2(long n, long k) {
  if (k < 1 || k + 2 > n) throw std::invalid_argument("g2: need 1 <= k <= n - 2");
  Rational sum(0);
  for (long t = k + 1; t <= n - k; ++t) sum += e_nkt(n, k, t);
  return Rational(binomial(n, k)) * sum;
}

Rational expected_ik(long n, long k) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("expected_ik: need 0 <= k <= n");
  if (k == n) return n == 1 ? Rational(1) : Rational(0);
  return Rational(binomial(n, k)) * rational_pow(one_minus_over(k, n), k - 1);
}

ExtensionProfile formula_profile(long n, long k) {
  if (k < 1 || k >= n) throw std::invalid_argument("formula_profile: need 1 <= k < n");
  ExtensionProfile p{n, k, {}};
  for (long t = 0; t <= n - k; ++t) p.probs.push_back(e_nkt(n, k, t));
  return p;
}

namespace {

// Iterates every Prufer code of length n-2 over {1..n} and reports, for
// each tree, the adjacency bitmasks of the first `track` vertices plus the
// neighborhood of the set {1..k}.  Decoding is inlined on bitmasks.
template <typename Fn>
void for_each_labelled_tree(int n, Fn&& fn) {
  std::vector<int> code(static_cast<std::size_t>(std::max(0, n - 2)), 1);
  std::vector<int> deg(static_cast<std::size_t>(n) + 1);
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n) + 1);
  auto decode_and_visit = [&]() {
    for (int v = 1; v <= n; ++v) {
      deg[static_cast<std::size_t>(v)] = 1;
      adj[static_cast<std::size_t>(v)] = 0;
    }
    for (int a : code) ++deg[static_cast<std::size_t>(a)];
    auto add_edge = [&](int u, int v) {
      adj[static_cast<std::size_t>(u)] |= (1u << v);
      adj[static_cast<std::size_t>(v)] |= (1u << u);
    };
    int ptr = 1;
    while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
    int leaf = ptr;
    for (int a : code) {
      add_edge(leaf, a);
      if (--deg[static_cast<std::size_t>(a)] == 1 && a < ptr) {
        leaf = a;
      } else {
        ++ptr;
        while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
        leaf = ptr;
      }
    }
    add_edge(leaf, n);
    fn(adj);
  };
  if (n == 2) {
    decode_and_visit();
    return;
  }
  while (true) {
    decode_and_visit();
    int pos = 0;
    while (pos < n - 2 && code[static_cast<std::size_t>(pos)] == n) {
      code[static_cast<std::size_t>(pos)] = 1;
      ++pos;
    }
    if (pos == n - 2) break;
    ++code[static_cast<std::size_t>(pos)];
  }
}

}  // namespace

ExtensionProfile brute_force_profile(long n, long k) {
  if (n < 2 || n > 9) throw std::invalid_argument("brute_force_profile: need 2 <= n <= 9");
  if (k < 1 || k >= n) throw std::invalid_argument("brute_force_profile: need 1 <= k < n");
  const std::uint32_t kmask = ((1u << (k + 1)) - 2);  // bits 1..k
  std::vector<std::uint64_t> tally(static_cast<std::size_t>(n - k) + 1, 0);
  for_each_labelled_tree(static_cast<int>(n), [&](const std::vector<std::uint32_t>& adj) {
    std::uint32_t closed = kmask;
    for (long v = 1; v <= k; ++v) {
      if (adj[static_cast<std::size_t>(v)] & kmask) return;  // not independent
      closed |= adj[static_cast<std::size_t>(v)];
    }
    const int t = static_cast<int>(n) - __builtin_popcount(closed);
    ++tally[static_cast<std::size_t>(t)];
  });
  BigInt total = 1;
  for (long i = 0; i < n - 2; ++i) total *= n;
  ExtensionProfile p{n, k, {}};
  for (auto c : tally) p.probs.push_back(make_rational(BigInt(static_cast<unsigned long>(c)), total));
  return p;
}

BigInt brute_force_trees_with_kl(long n, long k, long l) {
  if (n < 2 || n > 9) throw std::invalid_argument("brute_force_trees_with_kl: need 2 <= n <= 9");
  if (k < 1 || k + l > n) throw std::invalid_argument("brute_force_trees_with_kl: bad k, l");
  const std::uint32_t kmask = ((1u << (k + 1)) - 2);
  std::uint32_t lmask = 0;
  for (long v = k + 1; v <= k + l; ++v) lmask |= (1u << v);
  std::uint64_t count = 0;
  for_each_labelled_tree(static_cast<int>(n), [&](const std::vector<std::uint32_t>& adj) {
    std::uint32_t touched = 0;
    for (long v = 1; v <= k; ++v) {
      if (adj[static_cast<std::size_t>(v)] & kmask) return;
      touched |= adj[static_cast<std::size_t>(v)];
    }
    if (touched & lmask) return;
    ++count;
  });
  return BigInt(static_cast<unsigned long>(count));
}

}  // namespace indseq
