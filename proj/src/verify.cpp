#include "indseq/verify.hpp"

#include <sstream>
#include <stdexcept>

#include "indseq/exact.hpp"
#include "indseq/sequence.hpp"

namespace indseq {

const char* prop_name(TreeProp p) {
  switch (p) {
    case TreeProp::unimodal: return "unimodal";
    case TreeProp::log_concave: return "lc";
    case TreeProp::ordered_log_concave: return "olc";
    case TreeProp::ultra_log_concave: return "ulc";
    case TreeProp::real_roots: return "realroots";
    case TreeProp::tail_theorem: return "thm2";
    case TreeProp::head_theorem: return "thm5";
    case TreeProp::fisher_ryan: return "fisher-ryan";
    case TreeProp::zykov: return "zykov";
    case TreeProp::wingard: return "wingard";
  }
  return "?";
}

std::optional<TreeProp> prop_from_name(const std::string& name) {
  for (TreeProp p : {TreeProp::unimodal, TreeProp::log_concave, TreeProp::ordered_log_concave,
                     TreeProp::ultra_log_concave, TreeProp::real_roots, TreeProp::tail_theorem,
                     TreeProp::head_theorem, TreeProp::fisher_ryan, TreeProp::zykov,
                     TreeProp::wingard})
    if (name == prop_name(p)) return p;
  return std::nullopt;
}

std::vector<TreeProp> parse_props(const std::string& csv) {
  std::vector<TreeProp> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto p = prop_from_name(item);
    if (!p) throw std::invalid_argument("unknown property: " + item);
    out.push_back(*p);
  }
  if (out.empty()) throw std::invalid_argument("no properties selected");
  return out;
}

TreeChecker::TreeChecker(std::vector<TreeProp> props) : props_(std::move(props)) {
  for (TreeProp p : props_)
    if (p == TreeProp::head_theorem) needs_stats_ = true;
}

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

// First index where the cross-power form of the Fisher-Ryan chain breaks:
// i_k^{k+1} C(alpha,k+1)^k >= i_{k+1}^k C(alpha,k)^{k+1}.
long fisher_ryan_violation(std::span<const std::uint64_t> iseq, long alpha) {
  for (long k = 1; k < alpha; ++k) {
    BigInt lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), iseq[static_cast<std::size_t>(k)],
                  static_cast<unsigned long>(k + 1));
    BigInt binom_hi = binomial(alpha, k + 1);
    mpz_pow_ui(binom_hi.get_mpz_t(), binom_hi.get_mpz_t(), static_cast<unsigned long>(k));
    lhs *= binom_hi;
    mpz_ui_pow_ui(rhs.get_mpz_t(), iseq[static_cast<std::size_t>(k + 1)],
                  static_cast<unsigned long>(k));
    BigInt binom_lo = binomial(alpha, k);
    mpz_pow_ui(binom_lo.get_mpz_t(), binom_lo.get_mpz_t(), static_cast<unsigned long>(k + 1));
    rhs *= binom_lo;
    if (lhs < rhs) return k;
  }
  return -1;
}

long zykov_violation(std::span<const std::uint64_t> iseq, long alpha, long n) {
  for (long k = 0; k <= alpha; ++k) {
    // i_k alpha^k <= C(alpha,k) n^k
    BigInt lhs = BigInt(static_cast<unsigned long>(iseq[static_cast<std::size_t>(k)]));
    BigInt apow, npow;
    mpz_ui_pow_ui(apow.get_mpz_t(), static_cast<unsigned long>(alpha),
                  static_cast<unsigned long>(k));
    mpz_ui_pow_ui(npow.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(k));
    if (lhs * apow > binomial(alpha, k) * npow) return k;
  }
  return -1;
}

}  // namespace

std::optional<PropFailure> TreeChecker::check(std::span<const int> parent) {
  const long n = static_cast<long>(parent.size());
  independence_counts_u64(parent, iseq_);
  const long alpha = static_cast<long>(iseq_.size()) - 1;
  RootedStats stats;
  if (needs_stats_) stats = rooted_stats(parent);
  for (TreeProp p : props_) {
    switch (p) {
      case TreeProp::unimodal:
        if (!fast::is_unimodal(iseq_)) return PropFailure{p, -1};
        break;
      case TreeProp::log_concave:
        if (!fast::is_log_concave(iseq_)) return PropFailure{p, -1};
        break;
      case TreeProp::ordered_log_concave:
        if (!fast::is_ordered_log_concave(iseq_)) return PropFailure{p, -1};
        break;
      case TreeProp::ultra_log_concave:
        if (!fast::is_ultra_log_concave(iseq_)) return PropFailure{p, -1};
        break;
      case TreeProp::real_roots:
        if (!has_real_roots(CountSequence::from_u64(iseq_))) return PropFailure{p, -1};
        break;
      case TreeProp::tail_theorem: {
        if (n < 1 || alpha < 1) break;
        const long start = decreasing_tail_start(n, alpha);
        if (fast::decreasing_suffix_start(iseq_) > start) return PropFailure{p, start};
        break;
      }
      case TreeProp::head_theorem: {
        const long lambda = stats.min_maximal_is;
        if (lambda < ceil_div(n - alpha + 1, 2)) return PropFailure{p, lambda};
        if (fast::increasing_prefix_end(iseq_) < ceil_div(lambda, 2))
          return PropFailure{p, ceil_div(lambda, 2)};
        break;
      }
      case TreeProp::fisher_ryan: {
        const long k = fisher_ryan_violation(iseq_, alpha);
        if (k >= 0) return PropFailure{p, k};
        break;
      }
      case TreeProp::zykov: {
        const long k = zykov_violation(iseq_, alpha, n);
        if (k >= 0) return PropFailure{p, k};
        break;
      }
      case TreeProp::wingard: {
        for (long k = 0; k <= alpha; ++k)
          if (BigInt(static_cast<unsigned long>(iseq_[static_cast<std::size_t>(k)])) <
              binomial(n - k + 1, k))
            return PropFailure{p, k};
        break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace indseq
