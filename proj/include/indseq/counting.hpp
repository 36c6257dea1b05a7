#pragma once

#include <vector>

#include "indseq/exact.hpp"

namespace indseq {

// Number of labelled trees on {1..n} in which a fixed k-set K is
// independent and a fixed disjoint l-set has no edge to K:
// n^{n-k-l-1} (n-k)^{l-1} (n-k-l)^k, evaluated exactly.
// Requires k >= 1, k + l <= n, and k < n when l == 0 (the l = 0 case
// carries an (n-k)^{-1} factor).
BigInt trees_with_independent_set_avoiding(long n, long k, long l);

// Probability that in a uniform labelled tree a fixed k-set is independent
// with exactly t extensions, by inclusion-exclusion:
// C(n-k,t) sum_l (-1)^l C(n-k-t,l) (1-k/n)^{t+l-1} (1-(k+t+l)/n)^k.
// Requires 1 <= k, k + t <= n; k == n is answered directly (1 if n == 1).
Rational e_nkt(long n, long k, long t);

// Expected number of independent k-sets with exactly t extensions,
// f = C(n,k) e(n,k,t), via the alternating sum.
Rational f_nkt_alternating(long n, long k, long t);

// Same quantity through the Stirling-number route:
// a(n,k,t) (k/n)^{n-k-t} (n-k-t)^{-k} sum_j {k brace j} (n-k-t)_j (n/k)^j.
// Requires k + t < n (the power of n-k-t is inverted).
Rational f_nkt_stirling(long n, long k, long t);

// Expected number of independent k-sets with at most (g1) / at least (g2)
// k+1 extensions.  Require 1 <= k and k + 2 <= n.
Rational g1(long n, long k);
Rational g2(long n, long k);

// E(X_k) = C(n,k) (1 - k/n)^{k-1}, the l = 0 specialization above.
Rational expected_ik(long n, long k);

// Exact distribution of the extension count of the fixed set {1..k},
// tallied over all n^{n-2} labelled trees; probs[t] = e(n,k,t).
struct ExtensionProfile {
  long n = 0;
  long k = 0;
  std::vector<Rational> probs;  // indexed t = 0 .. n-k
};

// Formula-side profile (e_nkt for every t).
ExtensionProfile formula_profile(long n, long k);

// Brute force over every Prufer code; 2 <= n <= 9, 1 <= k < n.
ExtensionProfile brute_force_profile(long n, long k);

// Brute-force count matching trees_with_independent_set_avoiding, with
// K = {1..k} and L = {k+1..k+l}.  2 <= n <= 9.
BigInt brute_force_trees_with_kl(long n, long k, long l);

}  // namespace indseq
