#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "indseq/free_trees.hpp"
#include "indseq/tree.hpp"

using namespace indseq;

namespace {

// A000055.
constexpr std::uint64_t kFreeTreeCounts[] = {0,    1,    1,     1,     2,     3,
                                             6,    11,   23,    47,    106,   235,
                                             551,  1301, 3159,  7741,  19320, 48629,
                                             123867};

// A000081.
constexpr std::uint64_t kRootedTreeCounts[] = {0,   1,   1,    2,    4,    9,   20,
                                               48,  115, 286,  719,  1842, 4766};

}  // namespace

TEST_CASE("rooted level sequence counts match the known table") {
  for (int n = 1; n <= 12; ++n) {
    std::uint64_t count = 0;
    enumerate_rooted_level_sequences(n, [&](std::span<const int>) { ++count; });
    CHECK(count == kRootedTreeCounts[n]);
  }
}

TEST_CASE("free tree counts match the known table") {
  for (int n = 1; n <= 16; ++n) CHECK(count_free_trees(n) == kFreeTreeCounts[n]);
}

TEST_CASE("parent arrays are well formed and trees valid") {
  for (int n = 1; n <= 10; ++n) {
    enumerate_free_trees(n, [&](std::span<const int> parent) {
      REQUIRE(static_cast<int>(parent.size()) == n);
      CHECK(parent[0] == -1);
      for (int v = 1; v < n; ++v) {
        CHECK(parent[static_cast<std::size_t>(v)] >= 0);
        CHECK(parent[static_cast<std::size_t>(v)] < v);
      }
      validate_tree(tree_from_parents(parent));
    });
  }
}

TEST_CASE("n = 4 gives the path and the star") {
  std::set<std::string> codes;
  enumerate_free_trees(4, [&](std::span<const int> parent) {
    codes.insert(canonical_code(tree_from_parents(parent)));
  });
  CHECK(codes.size() == 2);
  CHECK(codes.count(canonical_code(Tree{4, {{1, 2}, {1, 3}, {1, 4}}})) == 1);
  CHECK(codes.count(canonical_code(Tree{4, {{1, 2}, {2, 3}, {3, 4}}})) == 1);
}

TEST_CASE("enumeration matches canonical dedup of all labelled trees") {
  for (int n = 2; n <= 9; ++n) {
    // Reference: every Prufer code, dedup by canonical code.
    std::set<std::string> reference;
    PruferCode code(static_cast<std::size_t>(n - 2), 1);
    while (true) {
      reference.insert(canonical_code(prufer_decode(code)));
      int pos = 0;
      while (pos < n - 2 && code[static_cast<std::size_t>(pos)] == n) {
        code[static_cast<std::size_t>(pos)] = 1;
        ++pos;
      }
      if (pos == n - 2) break;
      ++code[static_cast<std::size_t>(pos)];
    }
    std::multiset<std::string> produced;
    enumerate_free_trees(n, [&](std::span<const int> parent) {
      produced.insert(canonical_code(tree_from_parents(parent)));
    });
    // Exactly one representative per isomorphism class.
    CHECK(produced.size() == reference.size());
    CHECK(std::set<std::string>(produced.begin(), produced.end()) == reference);
  }
}

TEST_CASE("canonical codes separate the two 7-vertex spiders") {
  // Both have degree sequence (3,2,2,2,1,1,1) but different shapes.
  Tree a{7, {{1, 2}, {2, 3}, {1, 4}, {4, 5}, {1, 6}, {6, 7}}};   // legs 2,2,2
  Tree b{7, {{1, 2}, {2, 3}, {3, 4}, {1, 5}, {5, 6}, {1, 7}}};   // legs 3,2,1
  CHECK(canonical_code(a) != canonical_code(b));
}
