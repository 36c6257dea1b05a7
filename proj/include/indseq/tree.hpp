#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "indseq/sequence.hpp"

namespace indseq {

// Labelled tree on vertex set {1..n}, stored as an edge list.
struct Tree {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// Throws std::invalid_argument unless t is a connected acyclic graph on
// exactly {1..n} with n-1 edges.
void validate_tree(const Tree& t);

// Length n-2 word over {1..n}, the standard bijection with labelled trees.
using PruferCode = std::vector<int>;

Tree prufer_decode(const PruferCode& code);          // n = |code| + 2
PruferCode prufer_encode(const Tree& t);             // needs n >= 2

// Uniform over the n^{n-2} labelled trees, via uniform code symbols.
Tree random_tree(int n, std::uint64_t seed);

// Exact independence counts i_0..i_alpha (trailing zeros trimmed), by the
// rooted include/exclude DP with polynomial-valued states.
CountSequence independence_sequence(const Tree& t);

struct TreeStats {
  CountSequence iseq;
  int alpha = 0;           // independence number (= last nonzero index)
  int mu = 0;              // matching number
  int min_maximal_is = 0;  // smallest maximal-by-inclusion independent set
};
TreeStats tree_stats(const Tree& t);

// e(I): vertices neither in I nor adjacent to I.  Throws if I is not an
// independent set or contains out-of-range/duplicate vertices.
long count_extensions(const Tree& t, const std::vector<int>& independent_set);

// --- rooted parent-array form, the fast path used by enumeration ---
//
// parent[0] == -1 and parent[i] < i (vertices in a parent-first order).

// Independence counts written into out (resized to alpha+1); exact for
// n <= 60 or so -- every intermediate is a count bounded by C(n, n/2).
void independence_counts_u64(std::span<const int> parent,
                             std::vector<std::uint64_t>& out);

struct RootedStats {
  int alpha = 0;
  int mu = 0;
  int min_maximal_is = 0;
};
RootedStats rooted_stats(std::span<const int> parent);

Tree tree_from_parents(std::span<const int> parent);  // labels = index + 1
std::vector<int> parents_from_tree(const Tree& t);    // rooted at vertex 1

// BigInt DP over an arbitrary root order, for trees too large for u64.
CountSequence independence_sequence_from_parents(std::span<const int> parent);

// --- text formats accepted by the CLI ---

// "n\nu v\n..." edge-list format.
Tree parse_tree_text(const std::string& text);
std::string format_tree_text(const Tree& t);
// Whitespace-separated Prufer symbols (empty input = the 2-vertex tree).
Tree parse_prufer_text(const std::string& text);

}  // namespace indseq
