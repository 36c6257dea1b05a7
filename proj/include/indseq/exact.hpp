#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace indseq {

// Arbitrary-precision integer / rational, the only numeric types allowed in
// the exact layer.  Predicates and counting formulas must never round.
using BigInt = mpz_class;
using Rational = mpq_class;

// C(n, k); zero outside 0 <= k <= n.
BigInt binomial(long n, long k);

// Falling power (n)_j = n (n-1) ... (n-j+1); (n)_0 = 1.
BigInt falling_power(long n, long j);

// Stirling number of the second kind {k brace j}.
BigInt stirling2(long k, long j);

// base^e for integer e of either sign.  base == 0 requires e >= 0 (0^0 = 1).
Rational rational_pow(const Rational& base, long e);

// Reduced rational from a pair of integers, den != 0.
Rational make_rational(const BigInt& num, const BigInt& den);

}  // namespace indseq
