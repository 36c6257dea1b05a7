#pragma once

#include <string>
#include <vector>

#include "indseq/asymptotics.hpp"
#include "indseq/interval.hpp"

namespace indseq {

// One grid cell of the comparison inequality: kappa = k/n falls in
// [(p-1)/M, p/M), tau = t/n in [(q-1)/M, q/M).  Head cells take
// 1 <= q <= p+1 (t runs to k+1); tail cells take p <= q <= M-p+2
// (t runs from k+1 to n-k), with the large-t cells (p+q >= M) bounded by
// the cruder superset-extension route that needs no saddle point.
struct GridCell {
  long M = 0;
  long p = 0;
  long q = 0;
  Regime regime = Regime::head;
};

// Enclosures of the per-n growth rates of the named bounds.  All throw
// std::domain_error outside their valid parameter ranges.
Interval bound_A(long p, long M, Regime regime, mpfr_prec_t prec);
Interval bound_B(long p, long q, long M, Regime regime, mpfr_prec_t prec);
Interval bound_C(long p, long q, long M, mpfr_prec_t prec);
Interval bound_D(long p, long q, long M, mpfr_prec_t prec);
Interval bound_E(long p, long q, long M, mpfr_prec_t prec);
Interval bound_F(long p, long q, long M, mpfr_prec_t prec);
Interval bound_H(long p, long M, mpfr_prec_t prec);
Interval bound_I(long p, long M, Regime regime, mpfr_prec_t prec);

// Certified enclosures of the extremal saddle points over the cell: the
// roots of s_{M,p}(rho) = (p-1)/(M-p-q+2) and = p/(M-p-q).
struct RhoInterval {
  Interval rho_min;
  Interval rho_max;
};
RhoInterval rho_interval(long p, long q, long M, mpfr_prec_t prec);

Interval bound_G(long p, long q, long M, Regime regime, mpfr_prec_t prec);

// Enclosure of sigma^2 over the rho range (positivity is a per-cell gate).
Interval sigma_sq_enclosure(long p, long M, const RhoInterval& rho, mpfr_prec_t prec);

struct CellCheck {
  GridCell cell;
  double ratio_lo = 0;  // outward-rounded to double
  double ratio_hi = 0;
  bool pass = false;
  bool crude = false;      // large-t fallback route
  bool domain_error = false;
  int prec_used = 0;
};

// Evaluates the cell at 64-bit precision, escalating to 128/256 bits when
// the enclosure straddles the pass threshold 1 - margin.  Any domain
// failure marks the cell failed.
CellCheck check_cell(const GridCell& cell, double margin);

struct PVerdict {
  long p = 0;
  bool pass = false;
  long worst_q = 0;  // cell with the largest ratio upper bound
  double ratio_lo = 0;
  double ratio_hi = 0;
  int prec_used = 0;
};

struct StageReport {
  long M = 0;
  long p_begin = 0;      // scan start (head scans up, tail scans down)
  long p_end = 0;        // last p actually evaluated
  long verified_lo = 0;  // maximal contiguous verified run; empty if lo > hi
  long verified_hi = -1;
  std::vector<PVerdict> verdicts;
};

struct CertReport {
  Regime regime = Regime::head;
  double margin = 0;
  std::string precision_policy;
  std::vector<StageReport> stages;
  // head: verified_hi/M of the last stage; tail: verified_lo/M.
  long final_num = 0;
  long final_den = 1;
  bool chain_ok = true;
  std::vector<std::string> notes;
};

inline constexpr double kDefaultMargin = 1e-6;

// Scans p upward from p_lo (head) / downward from p_hi (tail), stopping at
// the first failure that follows a pass.  Wraps the single stage in a
// CertReport.
CertReport certify_head(long M, long p_lo, long p_hi, double margin = kDefaultMargin,
                        int workers = 0);
CertReport certify_tail(long M, long p_lo, long p_hi, double margin = kDefaultMargin,
                        int workers = 0);

// Staged run over increasing grid sizes; each stage's scan start is
// licensed by the previous stage's verified frontier (a gap is a hard
// error).  Head stage 1 starts at ceil(M/10), tail stage 1 at
// floor(0.362 M); those anchors come from the unconditional head/tail
// theorems.
CertReport bootstrap(const std::vector<long>& schedule, Regime regime,
                     double margin = kDefaultMargin, int workers = 0);

std::string cert_to_json(const CertReport& report);
CertReport cert_from_json(const std::string& json_text);

// Re-checks a serialized certificate without recomputing enclosures:
// verdict consistency, contiguity, chain conditions, final constant.
struct ReplayResult {
  bool ok = true;
  std::vector<std::string> problems;
};
ReplayResult replay(const CertReport& report);

}  // namespace indseq
