#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "indseq/tree.hpp"

namespace indseq {

// Calls fn once per isomorphism class of free trees on n vertices
// (1 <= n <= 26), passing a parent-first array (parent[0] == -1) that is
// only valid for the duration of the call.
//
// Unicentroidal trees come from the canonical level-sequence successor
// walk over rooted trees, pruned so that no root subtree ever exceeds
// floor((n-1)/2) vertices; bicentroidal trees (even n) are unordered pairs
// of canonical rooted trees on n/2 vertices joined at their roots.
void enumerate_free_trees(int n, const std::function<void(std::span<const int>)>& fn);

std::uint64_t count_free_trees(int n);

// Canonical level sequences (root level 1, lexicographically decreasing
// order) of all rooted trees on n vertices.
void enumerate_rooted_level_sequences(int n,
                                      const std::function<void(std::span<const int>)>& fn);

// Isomorphism code of a labelled tree: center-rooted canonical form.
// Two trees get equal codes iff they are isomorphic.  Used to validate the
// enumerator against a brute-force dedup of labelled trees.
std::string canonical_code(const Tree& t);

}  // namespace indseq
