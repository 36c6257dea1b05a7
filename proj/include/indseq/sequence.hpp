#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "indseq/exact.hpp"

namespace indseq {

// Finite sequence of nonnegative counts; term k counts size-k objects
// (for a graph, the number of independent sets of size k).
class CountSequence {
 public:
  explicit CountSequence(std::vector<BigInt> terms);
  static CountSequence from_u64(std::span<const std::uint64_t> terms);

  const std::vector<BigInt>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const BigInt& operator[](std::size_t k) const { return terms_[k]; }

  // Index of the last nonzero term, or -1 if every term is zero.
  long last_nonzero_index() const;

  // Copy with trailing zeros removed (term 0 is always kept).
  CountSequence trimmed() const;

  bool operator==(const CountSequence&) const = default;

 private:
  std::vector<BigInt> terms_;
};

// The nested positivity-property hierarchy.  All comparisons are exact:
// the rational factors 1 + 1/k are cleared of denominators first.
bool is_unimodal(const CountSequence& s);
bool is_log_concave(const CountSequence& s);
bool is_ordered_log_concave(const CountSequence& s);
bool is_ultra_log_concave(const CountSequence& s);

// True iff sum_k s_k x^k has all real roots, decided by an exact Sturm
// count over rationals after square-free reduction.  Rejects trailing
// zeros (trim first); a repeated real root stays real, so the reduction
// does not change the answer.
bool has_real_roots(const CountSequence& s);

// Coefficient sequence of the product polynomial.
CountSequence convolve(const CountSequence& a, const CountSequence& b);

// e_j = (j+1) s_{j+1} / s_j for j = 0 .. alpha-1, where alpha is the last
// nonzero index: the average number of one-vertex extensions of a size-j
// independent set.  Requires s_0 .. s_alpha all nonzero.
struct ExtensionAverages {
  std::vector<Rational> values;
  bool weakly_decreasing() const;
};
ExtensionAverages extension_averages(const CountSequence& s);

// ceil(alpha (n-1) / (alpha + n)): the sequence is weakly decreasing from
// this index on, for any n-vertex graph with independence number alpha.
long decreasing_tail_start(long n, long alpha);

// ceil((n - alpha + 1) / 4): a tree's sequence is weakly non-decreasing
// up to this index.
long increasing_head_end(long n, long alpha);

// Overflow-safe u64 fast paths used by the exhaustive verifier; they must
// agree with the BigInt predicates (property-tested).  Counts must satisfy
// max_k s_k^2 * (m+1) < 2^128, which holds comfortably for independence
// sequences of trees with <= 26 vertices.
namespace fast {
bool is_unimodal(std::span<const std::uint64_t> s);
bool is_log_concave(std::span<const std::uint64_t> s);
bool is_ordered_log_concave(std::span<const std::uint64_t> s);
bool is_ultra_log_concave(std::span<const std::uint64_t> s);
// Largest h with s weakly increasing on [0, h].
long increasing_prefix_end(std::span<const std::uint64_t> s);
// Smallest l with s weakly decreasing on [l, end].
long decreasing_suffix_start(std::span<const std::uint64_t> s);
}  // namespace fast

}  // namespace indseq
