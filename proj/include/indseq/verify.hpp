#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indseq/tree.hpp"

namespace indseq {

// Properties the exhaustive verifier can test per tree.  The first five
// are sequence predicates; the rest are the proved theorems and bounds
// (violating any of those means an implementation bug, not a discovery).
enum class TreeProp {
  unimodal,
  log_concave,
  ordered_log_concave,
  ultra_log_concave,
  real_roots,
  tail_theorem,     // weakly decreasing from ceil(alpha(n-1)/(alpha+n))
  head_theorem,     // min maximal IS >= ceil((n-alpha+1)/2), increasing prefix
  fisher_ryan,      // (i_k / C(alpha,k))^{1/k} weakly decreasing
  zykov,            // i_k <= C(alpha,k) (n/alpha)^k
  wingard,          // i_k >= C(n-k+1, k)
};

const char* prop_name(TreeProp p);
std::optional<TreeProp> prop_from_name(const std::string& name);
// Parses "olc,thm2,..." (the CLI spellings); throws on unknown names.
std::vector<TreeProp> parse_props(const std::string& csv);

struct PropFailure {
  TreeProp prop;
  long index = -1;  // sequence index where the property broke, if any
};

// Evaluates the properties on one rooted tree; the independence sequence
// is computed once with the u64 fast path (exact for n <= 26).  Returns
// the first failing property, if any.
class TreeChecker {
 public:
  explicit TreeChecker(std::vector<TreeProp> props);
  std::optional<PropFailure> check(std::span<const int> parent);
  const std::vector<std::uint64_t>& last_sequence() const { return iseq_; }

 private:
  std::vector<TreeProp> props_;
  std::vector<std::uint64_t> iseq_;
  bool needs_stats_ = false;
};

}  // namespace indseq
