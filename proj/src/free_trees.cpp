#include "indseq/free_trees.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace indseq {

namespace {

// Beyer-Hedetniemi successor on canonical level sequences (levels start at
// 1 for the root; first sequence is the path 1,2,...,n; each canonical
// sequence of a rooted tree appears exactly once, in decreasing
// lexicographic order).  Returns false when s is the star (all 2s).
bool next_level_sequence(std::vector<int>& s) {
  const int n = static_cast<int>(s.size());
  int p = n - 1;
  while (p >= 0 && s[static_cast<std::size_t>(p)] <= 2) --p;
  if (p < 0) return false;
  int q = p - 1;
  while (s[static_cast<std::size_t>(q)] != s[static_cast<std::size_t>(p)] - 1) --q;
  for (int i = p; i < n; ++i)
    s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i - (p - q))];
  return true;
}

void parents_from_levels(std::span<const int> s, std::vector<int>& parent,
                         std::vector<int>& last_at_level) {
  const int n = static_cast<int>(s.size());
  parent.resize(static_cast<std::size_t>(n));
  last_at_level.assign(static_cast<std::size_t>(n) + 2, -1);
  for (int i = 0; i < n; ++i) {
    const int lvl = s[static_cast<std::size_t>(i)];
    parent[static_cast<std::size_t>(i)] = last_at_level[static_cast<std::size_t>(lvl) - 1];
    last_at_level[static_cast<std::size_t>(lvl)] = i;
  }
}

// First position where the running root-subtree size exceeds cap, or -1.
int first_cap_violation(std::span<const int> s, int cap) {
  int size = 0;
  for (int i = 1; i < static_cast<int>(s.size()); ++i) {
    if (s[static_cast<std::size_t>(i)] == 2)
      size = 1;
    else
      ++size;
    if (size > cap) return i;
  }
  return -1;
}

// Replace everything from the violating position v on: the offending root
// subtree is cut to exactly cap vertices and the tail is refilled with
// copies of that truncated subtree (the largest canonical continuation).
// Every sequence between the old one and this one in the walk order keeps
// the oversized subtree, so nothing valid is skipped.
void prune_at(std::vector<int>& s, int v, int cap) {
  const int b = v - cap;  // start of the offending subtree: s[b] == 2
  const int n = static_cast<int>(s.size());
  for (int i = v; i < n; ++i)
    s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(b + (i - v) % cap)];
}

void enumerate_unicentroidal(int n, const std::function<void(std::span<const int>)>& fn) {
  const int cap = (n - 1) / 2;
  if (n == 1) {
    const int root_only[] = {-1};
    fn(std::span<const int>(root_only, 1));
    return;
  }
  if (cap < 1) return;  // n == 2 has no single-centroid tree
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = i + 1;
  std::vector<int> parent, scratch;
  bool alive = true;
  while (alive) {
    const int v = first_cap_violation(s, cap);
    if (v >= 0) {
      prune_at(s, v, cap);
    } else {
      parents_from_levels(s, parent, scratch);
      fn(parent);
      alive = next_level_sequence(s);
    }
  }
}

void enumerate_bicentroidal(int n, const std::function<void(std::span<const int>)>& fn) {
  if (n % 2 != 0) return;
  const int h = n / 2;
  std::vector<std::vector<int>> halves;
  enumerate_rooted_level_sequences(h, [&](std::span<const int> s) {
    halves.emplace_back(s.begin(), s.end());
  });
  std::vector<int> parent(static_cast<std::size_t>(n)), scratch, half_parent;
  // halves[] is in decreasing lexicographic order, so i <= j pairs are
  // exactly the unordered pairs {first >= second}.
  for (std::size_t i = 0; i < halves.size(); ++i) {
    parents_from_levels(halves[i], half_parent, scratch);
    std::copy(half_parent.begin(), half_parent.end(), parent.begin());
    for (std::size_t j = i; j < halves.size(); ++j) {
      parents_from_levels(halves[j], half_parent, scratch);
      parent[static_cast<std::size_t>(h)] = 0;  // join the two roots
      for (int v = 1; v < h; ++v)
        parent[static_cast<std::size_t>(h + v)] = half_parent[static_cast<std::size_t>(v)] + h;
      fn(parent);
    }
  }
}

}  // namespace

void enumerate_rooted_level_sequences(int n,
                                      const std::function<void(std::span<const int>)>& fn) {
  if (n < 1) throw std::invalid_argument("enumerate_rooted_level_sequences: n < 1");
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = i + 1;
  do {
    fn(s);
  } while (next_level_sequence(s));
}

void enumerate_free_trees(int n, const std::function<void(std::span<const int>)>& fn) {
  if (n < 1 || n > 26)
    throw std::invalid_argument("enumerate_free_trees: supported range is 1..26");
  enumerate_unicentroidal(n, fn);
  enumerate_bicentroidal(n, fn);
}

std::uint64_t count_free_trees(int n) {
  std::uint64_t count = 0;
  enumerate_free_trees(n, [&](std::span<const int>) { ++count; });
  return count;
}

namespace {

std::string ahu_code(int v, int parent, const std::vector<std::vector<int>>& adj) {
  std::vector<std::string> child_codes;
  for (int w : adj[static_cast<std::size_t>(v)])
    if (w != parent) child_codes.push_back(ahu_code(w, v, adj));
  std::sort(child_codes.begin(), child_codes.end());
  std::string code = "(";
  for (const auto& c : child_codes) code += c;
  code += ")";
  return code;
}

}  // namespace

std::string canonical_code(const Tree& t) {
  validate_tree(t);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.n) + 1);
  for (auto [u, v] : t.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  // Center(s) by repeated leaf stripping; the center is preserved by
  // isomorphism, so rooting there gives a complete invariant.
  std::vector<int> deg(static_cast<std::size_t>(t.n) + 1, 0);
  std::vector<char> removed(static_cast<std::size_t>(t.n) + 1, 0);
  for (int v = 1; v <= t.n; ++v) deg[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
  std::vector<int> layer;
  for (int v = 1; v <= t.n; ++v)
    if (deg[static_cast<std::size_t>(v)] <= 1) layer.push_back(v);
  int remaining = t.n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      removed[static_cast<std::size_t>(v)] = 1;
      --remaining;
      for (int w : adj[static_cast<std::size_t>(v)])
        if (!removed[static_cast<std::size_t>(w)] && --deg[static_cast<std::size_t>(w)] == 1)
          next.push_back(w);
    }
    layer = std::move(next);
  }
  std::vector<int> centers;
  for (int v = 1; v <= t.n; ++v)
    if (!removed[static_cast<std::size_t>(v)]) centers.push_back(v);
  if (centers.size() == 1) return "U" + ahu_code(centers[0], 0, adj);
  std::string a = ahu_code(centers[0], centers[1], adj);
  std::string b = ahu_code(centers[1], centers[0], adj);
  if (b < a) std::swap(a, b);
  return "B" + a + "|" + b;
}

}  // namespace indseq
