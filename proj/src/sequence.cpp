#include "indseq/sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace indseq {

namespace {

// --- dense rational polynomials, used only by the Sturm chain ---

using Poly = std::vector<Rational>;  // coefficient k of x^k; normalized

void normalize(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

long degree(const Poly& p) { return static_cast<long>(p.size()) - 1; }

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(Rational(k) * p[k]);
  normalize(d);
  return d;
}

// Scale by a positive rational so coefficients are coprime integers.
// Positive scaling preserves every sign in the Sturm chain.
void make_primitive(Poly& p) {
  if (p.empty()) return;
  BigInt den_lcm = 1;
  for (const auto& c : p) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  BigInt num_gcd = 0;
  for (const auto& c : p) {
    BigInt scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  if (num_gcd == 0) return;
  Rational scale = make_rational(den_lcm, num_gcd);
  for (auto& c : p) c *= scale;
}

// Remainder of a by b, deg b >= 0.
Poly poly_rem(Poly a, const Poly& b) {
  const long db = degree(b);
  while (degree(a) >= db) {
    Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    a.pop_back();
    normalize(a);
    if (a.empty()) break;
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  normalize(a);
  normalize(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  make_primitive(a);
  return a;
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
  Poly rem = a;
  Poly quot(a.size(), Rational(0));
  const long db = degree(b);
  while (degree(rem) >= db) {
    Rational q = rem.back() / b.back();
    const std::size_t shift = rem.size() - b.size();
    quot[shift] = q;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= q * b[i];
    rem.pop_back();
    normalize(rem);
    if (rem.empty()) break;
  }
  normalize(quot);
  return quot;
}

int sign_at_infinity(const Poly& p, bool positive_end) {
  if (p.empty()) return 0;
  int lead = sgn(p.back());
  if (positive_end) return lead;
  return (degree(p) % 2 == 0) ? lead : -lead;
}

long sign_changes_at_infinity(const std::vector<Poly>& chain, bool positive_end) {
  long changes = 0;
  int prev = 0;
  for (const auto& p : chain) {
    int s = sign_at_infinity(p, positive_end);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

// Number of distinct real roots of a square-free polynomial.
long distinct_real_roots(const Poly& p) {
  std::vector<Poly> chain;
  chain.push_back(p);
  chain.push_back(derivative(p));
  while (!chain.back().empty() && degree(chain.back()) >= 0) {
    if (degree(chain.back()) == 0) break;
    Poly r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    make_primitive(r);
    chain.push_back(std::move(r));
  }
  return sign_changes_at_infinity(chain, /*positive_end=*/false) -
         sign_changes_at_infinity(chain, /*positive_end=*/true);
}

}  // namespace

CountSequence::CountSequence(std::vector<BigInt> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("CountSequence: empty");
  for (const auto& t : terms_)
    if (t < 0) throw std::invalid_argument("CountSequence: negative term");
}

CountSequence CountSequence::from_u64(std::span<const std::uint64_t> terms) {
  std::vector<BigInt> v;
  v.reserve(terms.size());
  for (auto t : terms) {
    BigInt b;
    mpz_import(b.get_mpz_t(), 1, 1, sizeof(t), 0, 0, &t);
    v.push_back(std::move(b));
  }
  return CountSequence(std::move(v));
}

long CountSequence::last_nonzero_index() const {
  for (long k = static_cast<long>(terms_.size()) - 1; k >= 0; --k)
    if (terms_[static_cast<std::size_t>(k)] != 0) return k;
  return -1;
}

CountSequence CountSequence::trimmed() const {
  long alpha = last_nonzero_index();
  if (alpha < 0) alpha = 0;
  return CountSequence(std::vector<BigInt>(terms_.begin(), terms_.begin() + alpha + 1));
}

bool is_unimodal(const CountSequence& s) {
  const auto& a = s.terms();
  std::size_t k = 1;
  while (k < a.size() && a[k - 1] <= a[k]) ++k;
  for (; k < a.size(); ++k)
    if (a[k - 1] < a[k]) return false;
  return true;
}

bool is_log_concave(const CountSequence& s) {
  const auto& a = s.terms();
  for (std::size_t k = 1; k + 1 < a.size(); ++k)
    if (a[k] * a[k] < a[k - 1] * a[k + 1]) return false;
  return true;
}

bool is_ordered_log_concave(const CountSequence& s) {
  const auto& a = s.terms();
  for (std::size_t k = 1; k + 1 < a.size(); ++k)
    if (BigInt(k) * a[k] * a[k] < BigInt(k + 1) * a[k - 1] * a[k + 1]) return false;
  return true;
}

bool is_ultra_log_concave(const CountSequence& s) {
  const auto& a = s.terms();
  const std::size_t m = a.size() - 1;
  for (std::size_t k = 1; k + 1 < a.size(); ++k)
    if (BigInt(k * (m - k)) * a[k] * a[k] <
        BigInt((k + 1) * (m - k + 1)) * a[k - 1] * a[k + 1])
      return false;
  return true;
}

bool has_real_roots(const CountSequence& s) {
  const auto& a = s.terms();
  if (a.back() == 0)
    throw std::invalid_argument("has_real_roots: trailing zero, trim first");
  Poly p;
  for (const auto& c : a) p.push_back(Rational(c));
  normalize(p);
  if (degree(p) <= 0) return true;  // constants have no roots
  Poly g = poly_gcd(p, derivative(p));
  Poly sf = (degree(g) >= 1) ? poly_div_exact(p, g) : p;
  return distinct_real_roots(sf) == degree(sf);
}

CountSequence convolve(const CountSequence& a, const CountSequence& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::vector<BigInt> out(x.size() + y.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return CountSequence(std::move(out));
}

bool ExtensionAverages::weakly_decreasing() const {
  for (std::size_t j = 1; j < values.size(); ++j)
    if (values[j] > values[j - 1]) return false;
  return true;
}

ExtensionAverages extension_averages(const CountSequence& s) {
  const long alpha = s.last_nonzero_index();
  if (alpha < 0) throw std::invalid_argument("extension_averages: zero sequence");
  ExtensionAverages out;
  for (long j = 0; j < alpha; ++j) {
    const BigInt& sj = s[static_cast<std::size_t>(j)];
    if (sj == 0)
      throw std::invalid_argument("extension_averages: zero interior term");
    out.values.push_back(make_rational(BigInt(j + 1) * s[static_cast<std::size_t>(j + 1)], sj));
  }
  return out;
}

long decreasing_tail_start(long n, long alpha) {
  if (alpha < 1 || alpha > n)
    throw std::invalid_argument("decreasing_tail_start: need 1 <= alpha <= n");
  const long num = alpha * (n - 1);
  const long den = alpha + n;
  return (num + den - 1) / den;
}

long increasing_head_end(long n, long alpha) {
  if (alpha < 1 || alpha > n)
    throw std::invalid_argument("increasing_head_end: need 1 <= alpha <= n");
  return (n - alpha + 1 + 3) / 4;
}

namespace fast {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

bool is_unimodal(std::span<const u64> a) {
  std::size_t k = 1;
  while (k < a.size() && a[k - 1] <= a[k]) ++k;
  for (; k < a.size(); ++k)
    if (a[k - 1] < a[k]) return false;
  return true;
}

bool is_log_concave(std::span<const u64> a) {
  for (std::size_t k = 1; k + 1 < a.size(); ++k)
    if (u128(a[k]) * a[k] < u128(a[k - 1]) * a[k + 1]) return false;
  return true;
}

bool is_ordered_log_concave(std::span<const u64> a) {
  for (std::size_t k = 1; k + 1 < a.size(); ++k)
    if (u128(k) * a[k] * a[k] < u128(k + 1) * a[k - 1] * a[k + 1]) return false;
  return true;
}

bool is_ultra_log_concave(std::span<const u64> a) {
  const std::size_t m = a.size() - 1;
  for (std::size_t k = 1; k + 1 < a.size(); ++k)
    if (u128(k * (m - k)) * a[k] * a[k] <
        u128((k + 1) * (m - k + 1)) * a[k - 1] * a[k + 1])
      return false;
  return true;
}

long increasing_prefix_end(std::span<const u64> a) {
  std::size_t k = 1;
  while (k < a.size() && a[k - 1] <= a[k]) ++k;
  return static_cast<long>(k) - 1;
}

long decreasing_suffix_start(std::span<const u64> a) {
  std::size_t k = a.size() - 1;
  while (k > 0 && a[k - 1] >= a[k]) --k;
  return static_cast<long>(k);
}

}  // namespace fast

}  // namespace indseq
