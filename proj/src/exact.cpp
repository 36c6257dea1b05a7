#include "indseq/exact.hpp"

#include <stdexcept>

namespace indseq {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

BigInt falling_power(long n, long j) {
  if (j < 0) throw std::invalid_argument("falling_power: j < 0");
  BigInt r = 1;
  for (long i = 0; i < j; ++i) r *= BigInt(n - i);
  return r;
}

BigInt stirling2(long k, long j) {
  if (k < 0 || j < 0) throw std::invalid_argument("stirling2: negative argument");
  if (j > k) return 0;
  if (k == 0) return j == 0 ? 1 : 0;
  if (j == 0) return 0;
  // Triangular recurrence S(k, j) = j S(k-1, j) + S(k-1, j-1).
  std::vector<BigInt> row(static_cast<std::size_t>(j) + 1, BigInt(0));
  row[0] = 1;  // S(0, 0)
  for (long m = 1; m <= k; ++m) {
    for (long i = std::min<long>(j, m); i >= 1; --i) {
      row[static_cast<std::size_t>(i)] =
          BigInt(i) * row[static_cast<std::size_t>(i)] +
          row[static_cast<std::size_t>(i - 1)];
    }
    row[0] = 0;  // S(m, 0) = 0 for m >= 1
  }
  return row[static_cast<std::size_t>(j)];
}

Rational rational_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0) {
    if (e < 0) throw std::domain_error("rational_pow: 0 to a negative power");
    return Rational(0);
  }
  Rational r;
  const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), mag);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), mag);
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace indseq
