#include "indseq/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <atomic>
#include <limits>
#include <mutex>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "indseq/parallel.hpp"

namespace indseq {

namespace {

using json = nlohmann::json;

struct Ratio {
  long num = 0;
  long den = 1;  // > 0
};

// a/b vs c/d with positive denominators.
int cmp(const Ratio& a, const Ratio& b) {
  const __int128 left = static_cast<__int128>(a.num) * b.den;
  const __int128 right = static_cast<__int128>(b.num) * a.den;
  return left < right ? -1 : (left > right ? 1 : 0);
}

Ratio clamp_to_one(Ratio r) {
  if (r.num > r.den) return Ratio{1, 1};
  return r;
}

Interval as_interval(const Ratio& r, mpfr_prec_t prec) {
  return Interval::from_ratio(r.num, r.den, prec);
}

// H at an exact rational point.
Interval entropy_point(const Ratio& x, mpfr_prec_t prec) {
  if (x.num < 0 || x.num > x.den) throw std::domain_error("entropy: argument outside [0,1]");
  if (x.num == 0 || x.num == x.den) return Interval::from_long(0, prec);
  const Interval xv = as_interval(x, prec);
  const Interval one_minus = Interval::from_long(1, prec) - xv;
  return ((xv * xv.log2()) + (one_minus * one_minus.log2())).neg();
}

// Enclosure of max_{x in [a,b]} H(x); H is concave with peak H(1/2) = 1.
Interval entropy_max(const Ratio& a, const Ratio& b, mpfr_prec_t prec) {
  const Ratio half{1, 2};
  if (cmp(a, half) <= 0 && cmp(half, b) <= 0) return Interval::from_long(1, prec);
  return Interval::max(entropy_point(a, prec), entropy_point(b, prec));
}

// Enclosure of min over the interval; concavity puts it at an endpoint.
Interval entropy_min(const Ratio& a, const Ratio& b, mpfr_prec_t prec) {
  return Interval::min(entropy_point(a, prec), entropy_point(b, prec));
}

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

Interval bound_A(long p, long M, Regime, mpfr_prec_t prec) {
  require(p >= 2 && p <= M, "bound_A: need 2 <= p <= M");
  // kappa lies in [(p-1)/M, p/M]; concave-endpoint maximum of H covers both
  // regimes (on the head and tail windows, where the arguments stay below
  // 1/2, it equals H(p/M)).
  return entropy_max(Ratio{p - 1, M}, Ratio{p, M}, prec).exp2();
}

namespace {

Interval bound_B_range(long p, long q1, long q2, long M, mpfr_prec_t prec) {
  require(p >= 2 && q1 >= 1 && q1 <= q2 && p < M, "bound_B: parameter range");
  // t/(n-k) lies in [(q-1)/(M-p+1), q/(M-p)] (upper end clamped to 1).
  const Ratio lo{q1 - 1, M - p + 1};
  const Ratio hi = clamp_to_one(Ratio{q2, M - p});
  const Interval factor = Interval::from_ratio(M - p + 1, M, prec);
  return (factor * entropy_max(lo, hi, prec)).exp2();
}

}  // namespace

Interval bound_B(long p, long q, long M, Regime, mpfr_prec_t prec) {
  return bound_B_range(p, q, q, M, prec);
}

Interval bound_C(long p, long q, long M, mpfr_prec_t prec) {
  require(p >= 2 && q >= 1 && p <= M, "bound_C: parameter range");
  return Interval::from_ratio(M - p + 1, M, prec).pow(Interval::from_ratio(q - 1, M, prec));
}

Interval bound_D(long p, long q, long M, mpfr_prec_t prec) {
  require(p >= 2 && q >= 1 && p + q - 2 <= M, "bound_D: need p + q - 2 <= M");
  if (p + q - 2 == M) return Interval::from_long(0, prec);  // base is exactly zero
  return Interval::from_ratio(M - p - q + 2, M, prec).pow(Interval::from_ratio(p - 1, M, prec));
}

Interval bound_E(long p, long q, long M, mpfr_prec_t prec) {
  require(p >= 2 && q >= 1 && p + q < M, "bound_E: need p + q < M");
  return Interval::from_ratio(p, M, prec).pow(Interval::from_ratio(M - p - q, M, prec));
}

Interval bound_F(long p, long q, long M, mpfr_prec_t prec) {
  require(p >= 2 && q >= 1 && p + q < M, "bound_F: need p + q < M");
  return Interval::from_ratio(M - p - q, M, prec).pow(Interval::from_ratio(p, M, prec));
}

Interval bound_H(long p, long M, mpfr_prec_t prec) {
  require(p >= 2 && p <= M, "bound_H: need 2 <= p <= M");
  const Interval e = Interval::from_long(1, prec).exp();
  return (Interval::from_ratio(p, M, prec) / e).pow(Interval::from_ratio(p - 1, M, prec));
}

Interval bound_I(long p, long M, Regime regime, mpfr_prec_t prec) {
  require(p >= 2 && p < M, "bound_I: need 2 <= p < M");
  Ratio lo{0, 1}, hi{0, 1};
  if (regime == Regime::head) {
    // argument k/(n-k+1) in [(p-1)/(M-p+2), p/(M-p)]
    lo = Ratio{p - 1, M - p + 2};
    hi = clamp_to_one(Ratio{p, M - p});
  } else {
    // argument (k+1)/(n-k) in [(p-1)/(M-p+1), (p+1)/(M-p)]
    lo = Ratio{p - 1, M - p + 1};
    hi = clamp_to_one(Ratio{p + 1, M - p});
  }
  const Interval factor = Interval::from_ratio(M - p, M, prec);
  return (factor * entropy_min(lo, hi, prec)).exp2();
}

namespace {

// s_{M,p}(rho) = c rho e^rho / (1 + c (e^rho - 1)) with c = M/(p-1),
// evaluated as an enclosure.
Interval saddle_map_enclosure(long p, long M, const Interval& rho, mpfr_prec_t prec) {
  const Interval c = Interval::from_ratio(M, p - 1, prec);
  const Interval num = c * rho * rho.exp();
  const Interval den = Interval::from_long(1, prec) + c * rho.expm1();
  return num / den;
}

double saddle_map_point(long p, long M, double rho) {
  const double kappa_eff = static_cast<double>(p - 1) / static_cast<double>(M);
  if (rho > 700.0) return rho / (1.0 + (kappa_eff - 1.0) * std::exp(-rho));
  return rho * std::exp(rho) / (kappa_eff + std::expm1(rho));
}

// Certified enclosure of the unique root of s_{M,p} = target.  Starts from
// a double-precision point solve, verifies a small bracket with interval
// evaluations, then bisects the certified bracket down to ~2^-(prec-8)
// relative width.
Interval certified_saddle_root(long p, long M, const Ratio& target, mpfr_prec_t prec) {
  const Interval target_enc = as_interval(target, prec);
  const double target_d = static_cast<double>(target.num) / static_cast<double>(target.den);

  // Point estimate by doubling + bisection on the monotone map.
  double lo_d = 1.0, hi_d = 1.0;
  int guard = 0;
  while (saddle_map_point(p, M, lo_d) >= target_d && guard++ < 1100) lo_d /= 2;
  guard = 0;
  while (saddle_map_point(p, M, hi_d) <= target_d && guard++ < 1100) hi_d *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo_d + hi_d);
    if (mid <= lo_d || mid >= hi_d) break;
    if (saddle_map_point(p, M, mid) < target_d)
      lo_d = mid;
    else
      hi_d = mid;
  }
  const double root_d = 0.5 * (lo_d + hi_d);

  mpfr_t a, b, mid;
  mpfr_init2(a, prec);
  mpfr_init2(b, prec);
  mpfr_init2(mid, prec);
  auto below = [&](const mpfr_t x) {  // certified s(x) < target
    const Interval sx = saddle_map_enclosure(p, M, Interval::point(x, prec), prec);
    return mpfr_cmp(sx.hi(), target_enc.lo()) < 0;
  };
  auto above = [&](const mpfr_t x) {  // certified s(x) > target
    const Interval sx = saddle_map_enclosure(p, M, Interval::point(x, prec), prec);
    return mpfr_cmp(sx.lo(), target_enc.hi()) > 0;
  };

  // Grow a certified bracket around the point estimate.
  double spread = 1e-12;
  bool bracketed = false;
  for (int attempt = 0; attempt < 20 && !bracketed; ++attempt, spread *= 32) {
    mpfr_set_d(a, root_d * (1.0 - spread), MPFR_RNDD);
    mpfr_set_d(b, root_d * (1.0 + spread), MPFR_RNDU);
    bracketed = mpfr_sgn(a) > 0 && below(a) && above(b);
  }
  if (!bracketed) {
    // Fall back to a wide certified doubling bracket.
    mpfr_set_d(a, 1.0, MPFR_RNDD);
    guard = 0;
    while (!below(a) && guard++ < 1100) mpfr_div_2ui(a, a, 1, MPFR_RNDD);
    mpfr_set_d(b, 1.0, MPFR_RNDU);
    guard = 0;
    while (!above(b) && guard++ < 1100) mpfr_mul_2ui(b, b, 1, MPFR_RNDU);
    if (!below(a) || !above(b)) {
      mpfr_clears(a, b, mid, static_cast<mpfr_ptr>(nullptr));
      throw std::domain_error("rho_interval: bracket failure");
    }
  }

  // Certified bisection until the bracket stops shrinking usefully.  The
  // ratio only has to be resolved against 1 - margin, so ~2^-38 relative
  // width suffices at base precision; escalated reruns refine further.
  mpfr_t width, limit;
  mpfr_init2(width, prec);
  mpfr_init2(limit, prec);
  mpfr_sub(width, b, a, MPFR_RNDU);
  mpfr_mul_2si(limit, b, -std::min<long>(38, static_cast<long>(prec - 8)), MPFR_RNDD);
  while (mpfr_cmp(width, limit) > 0) {
    mpfr_add(mid, a, b, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    if (mpfr_cmp(mid, a) <= 0 || mpfr_cmp(mid, b) >= 0) break;
    if (below(mid))
      mpfr_set(a, mid, MPFR_RNDD);
    else if (above(mid))
      mpfr_set(b, mid, MPFR_RNDU);
    else
      break;  // undecidable at this precision; current bracket is the enclosure
    mpfr_sub(width, b, a, MPFR_RNDU);
  }
  Interval out = Interval::from_endpoints(a, b, prec);
  mpfr_clears(a, b, mid, width, limit, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace

namespace {

// rho_min uses the left target of the q1 cell, rho_max the right target of
// the q2 cell; with q1 == q2 this is the single-cell interval.
RhoInterval rho_interval_range(long p, long q1, long q2, long M, mpfr_prec_t prec) {
  require(p >= 2, "rho_interval: need p >= 2");
  require(M - p - q2 > 0, "rho_interval: need p + q < M");
  const Ratio target_lo{p - 1, M - p - q1 + 2};
  const Ratio target_hi{p, M - p - q2};
  return RhoInterval{certified_saddle_root(p, M, target_lo, prec),
                     certified_saddle_root(p, M, target_hi, prec)};
}

Interval bound_G_range(long p, long q1, long q2, long M, Regime regime, mpfr_prec_t prec) {
  const RhoInterval rho = rho_interval_range(p, q1, q2, M, prec);
  const Interval c = Interval::from_ratio(M, p - 1, prec);
  const Interval base = Interval::from_long(1, prec) + c * rho.rho_max.expm1();
  // Base >= 1, so the largest admissible exponent (at q1) dominates.
  const Interval num = base.pow(Interval::from_ratio(M - p - q1 + 2, M, prec));
  const Interval den_full = rho.rho_min.pow(Interval::from_ratio(p, M, prec));
  if (regime == Regime::head) return num / den_full;
  // Tail: rho_min may exceed 1, so take the smaller of the two powers.
  const Interval den_alt = rho.rho_min.pow(Interval::from_ratio(p - 1, M, prec));
  return num / Interval::min(den_full, den_alt);
}

}  // namespace

RhoInterval rho_interval(long p, long q, long M, mpfr_prec_t prec) {
  return rho_interval_range(p, q, q, M, prec);
}

Interval bound_G(long p, long q, long M, Regime regime, mpfr_prec_t prec) {
  return bound_G_range(p, q, q, M, regime, prec);
}

Interval sigma_sq_enclosure(long p, long M, const RhoInterval& rho, mpfr_prec_t prec) {
  // sigma^2(rho) = c rho e^rho (1 + rho + c(e^rho - 1 - rho)) / f(rho)^2 is
  // a ratio of increasing positive factors, so evaluate each side at the
  // matching end of the hull [rho_min.lo, rho_max.hi].
  const Interval c = Interval::from_ratio(M, p - 1, prec);
  const Interval one = Interval::from_long(1, prec);
  auto numerator = [&](const Interval& r) {
    return c * r * r.exp() * (one + r + c * (r.expm1() - r));
  };
  auto f_sq = [&](const Interval& r) {
    const Interval f = one + c * r.expm1();
    return f * f;
  };
  const Interval at_lo = Interval::point(rho.rho_min.lo(), prec);
  const Interval at_hi = Interval::point(rho.rho_max.hi(), prec);
  const Interval num = Interval::from_endpoints(numerator(at_lo).lo(), numerator(at_hi).hi(), prec);
  const Interval den = Interval::from_endpoints(f_sq(at_lo).lo(), f_sq(at_hi).hi(), prec);
  return num / den;
}

namespace {

struct RangeEnclosure {
  Interval ratio;
  bool crude = false;
};

// Sound bound for every cell with q in [q1, q2]: each factor is evaluated
// at its worst admissible endpoint (C and D fall with q, E rises, F in the
// denominator falls, B and G take the whole range).  With q1 == q2 this is
// the plain single-cell enclosure.
RangeEnclosure evaluate_range(long M, long p, long q1, long q2, Regime regime,
                              mpfr_prec_t prec) {
  // Cells outside the regime's admissible window are not covered by the
  // reduction (the unconditional theorems own those ranges), so they are
  // domain failures, not verdicts.
  if (regime == Regime::head) {
    require(10 * p >= M, "head cell below the kappa >= 1/10 window");
    require(q1 >= 1 && q2 <= p + 1, "head cell q outside [1, p+1]");
  } else {
    require(100 * p >= 34 * M, "tail cell below the kappa >= 0.34 window");
    require(1000 * p <= 362 * M, "tail cell above the kappa <= 0.362 window");
    require(q1 >= p && q2 <= M - p + 2, "tail cell q outside [p, M-p+2]");
  }
  require(q1 <= q2, "evaluate_range: empty q range");
  const Interval a = bound_A(p, M, regime, prec);
  const Interval b = bound_B_range(p, q1, q2, M, prec);
  const Interval c = bound_C(p, q1, M, prec);
  const Interval d = bound_D(p, q1, M, prec);
  const Interval i = bound_I(p, M, regime, prec);
  if (regime == Regime::tail && p + q1 >= M) {
    // Large-t cells: exact-extension probability <= superset-extension
    // probability, so f <= a(n,k,t) and the saddle-point factors drop out.
    return RangeEnclosure{(a * b * c * d) / i, true};
  }
  const RhoInterval rho = rho_interval_range(p, q1, q2, M, prec);
  if (!sigma_sq_enclosure(p, M, rho, prec).is_positive())
    throw std::domain_error("check_cell: sigma^2 not certified positive");
  const Interval e = bound_E(p, q2, M, prec);
  const Interval f = bound_F(p, q2, M, prec);
  const Interval h = bound_H(p, M, prec);
  const Interval g = bound_G_range(p, q1, q2, M, regime, prec);
  return RangeEnclosure{(a * b * c * d * e * g * h) / (f * i), false};
}

}  // namespace

CellCheck check_cell(const GridCell& cell, double margin) {
  const double threshold = 1.0 - margin;
  CellCheck out;
  out.cell = cell;
  for (mpfr_prec_t prec : {mpfr_prec_t(64), mpfr_prec_t(128), mpfr_prec_t(256)}) {
    out.prec_used = static_cast<int>(prec);
    try {
      const RangeEnclosure enc =
          evaluate_range(cell.M, cell.p, cell.q, cell.q, cell.regime, prec);
      out.ratio_lo = enc.ratio.lo_double();
      out.ratio_hi = enc.ratio.hi_double();
      out.crude = enc.crude;
      out.pass = out.ratio_hi < threshold;
      if (out.pass) return out;
      if (out.ratio_lo >= threshold) return out;  // definite failure
      // Straddles the threshold: escalate precision.
    } catch (const std::domain_error&) {
      out.domain_error = true;
      out.pass = false;
      out.ratio_lo = 0;
      out.ratio_hi = std::numeric_limits<double>::infinity();
      return out;
    }
  }
  out.pass = false;
  return out;
}

namespace {

// Verdict for one p row by adaptive subdivision of the q range: a range
// whose super-cell bound clears the threshold covers all its cells at
// once; otherwise it splits, down to single cells which escalate precision
// before failing.  The recorded enclosure is the worst evaluated leaf, an
// upper bound for every cell in the row.
PVerdict check_p(long M, long p, Regime regime, double margin, int workers) {
  long q_lo = 1, q_hi = p + 1;
  if (regime == Regime::tail) {
    q_lo = p;
    q_hi = M - p + 2;
  }
  const double threshold = 1.0 - margin;
  PVerdict v;
  v.p = p;
  v.pass = true;
  v.prec_used = 64;
  bool first = true;
  std::mutex mu;
  auto record = [&](long q, double lo, double hi, int prec, bool pass) {
    std::lock_guard<std::mutex> lock(mu);
    if (first || hi > v.ratio_hi || (hi == v.ratio_hi && q < v.worst_q)) {
      v.worst_q = q;
      v.ratio_lo = lo;
      v.ratio_hi = hi;
      v.prec_used = prec;
      first = false;
    }
    v.pass = v.pass && pass;
  };
  // Seed ranges: fixed chunks keep the workers busy; each chunk subdivides
  // independently.
  const long chunk = std::max<long>(64, (q_hi - q_lo + 1) / (8 * worker_count(workers)));
  std::vector<std::pair<long, long>> seeds;
  for (long q = q_lo; q <= q_hi; q += chunk) seeds.emplace_back(q, std::min(q + chunk - 1, q_hi));
  std::atomic<bool> row_failed{false};
  parallel_for(0, static_cast<long>(seeds.size()), workers, [&](long si) {
    std::vector<std::pair<long, long>> stack{seeds[static_cast<std::size_t>(si)]};
    while (!stack.empty()) {
      if (row_failed.load(std::memory_order_relaxed)) return;
      auto [a, b] = stack.back();
      stack.pop_back();
      bool split = false;
      if (a == b) {
        const CellCheck cell = check_cell(GridCell{M, p, a, regime}, margin);
        record(a, cell.ratio_lo, cell.ratio_hi, cell.prec_used, cell.pass);
        if (!cell.pass) row_failed.store(true, std::memory_order_relaxed);
      } else {
        try {
          const RangeEnclosure enc = evaluate_range(M, p, a, b, regime, 64);
          if (enc.ratio.hi_double() < threshold)
            record(a, enc.ratio.lo_double(), enc.ratio.hi_double(), 64, true);
          else
            split = true;
        } catch (const std::domain_error&) {
          split = true;  // mixed-route or out-of-window ends; halves decide
        }
      }
      if (split) {
        const long mid = a + (b - a) / 2;
        stack.emplace_back(mid + 1, b);
        stack.emplace_back(a, mid);
      }
    }
  });
  if (row_failed.load()) v.pass = false;
  return v;
}

StageReport run_stage(long M, long p_begin, long p_limit, Regime regime, double margin,
                      int workers) {
  StageReport stage;
  stage.M = M;
  stage.p_begin = p_begin;
  stage.p_end = p_begin;
  const long step = (regime == Regime::head) ? 1 : -1;
  bool seen_pass = false;
  for (long p = p_begin; (step > 0) ? (p <= p_limit) : (p >= p_limit); p += step) {
    PVerdict v = check_p(M, p, regime, margin, workers);
    stage.p_end = p;
    stage.verdicts.push_back(v);
    if (v.pass) {
      seen_pass = true;
    } else if (seen_pass) {
      break;  // frontier found
    }
  }
  // Maximal contiguous verified run (ties broken toward the scan start).
  long best_len = 0, run_start = -1, run_len = 0;
  for (const auto& v : stage.verdicts) {
    if (v.pass) {
      if (run_len == 0) run_start = v.p;
      ++run_len;
      if (run_len > best_len) {
        best_len = run_len;
        stage.verified_lo = std::min(run_start, v.p);
        stage.verified_hi = std::max(run_start, v.p);
      }
    } else {
      run_len = 0;
    }
  }
  if (best_len == 0) {
    stage.verified_lo = 0;
    stage.verified_hi = -1;
  }
  return stage;
}

const char* kPrecisionPolicy = "mpfr interval, outward rounding, 64/128/256-bit escalation";

}  // namespace

CertReport certify_head(long M, long p_lo, long p_hi, double margin, int workers) {
  if (M < 10 || p_lo < 2 || p_hi < p_lo || p_hi >= M)
    throw std::invalid_argument("certify_head: bad range");
  CertReport report;
  report.regime = Regime::head;
  report.margin = margin;
  report.precision_policy = kPrecisionPolicy;
  report.stages.push_back(run_stage(M, p_lo, p_hi, Regime::head, margin, workers));
  const auto& st = report.stages.back();
  if (st.verified_hi >= st.verified_lo) {
    report.final_num = st.verified_hi;
    report.final_den = M;
  }
  return report;
}

CertReport certify_tail(long M, long p_lo, long p_hi, double margin, int workers) {
  if (M < 10 || p_lo < 2 || p_hi < p_lo || p_hi >= M)
    throw std::invalid_argument("certify_tail: bad range");
  CertReport report;
  report.regime = Regime::tail;
  report.margin = margin;
  report.precision_policy = kPrecisionPolicy;
  report.stages.push_back(run_stage(M, p_hi, p_lo, Regime::tail, margin, workers));
  const auto& st = report.stages.back();
  if (st.verified_hi >= st.verified_lo) {
    report.final_num = st.verified_lo;
    report.final_den = M;
  }
  return report;
}

CertReport bootstrap(const std::vector<long>& schedule, Regime regime, double margin,
                     int workers) {
  if (schedule.empty()) throw std::invalid_argument("bootstrap: empty schedule");
  CertReport report;
  report.regime = regime;
  report.margin = margin;
  report.precision_policy = kPrecisionPolicy;
  long prev_frontier_num = 0, prev_frontier_den = 1;
  for (std::size_t idx = 0; idx < schedule.size(); ++idx) {
    const long M = schedule[idx];
    long p_begin = 0, p_limit = 0;
    if (regime == Regime::head) {
      // Anchor: the sequence is a.a.s. increasing up to 0.108n, so kappa
      // >= 0.1 may be assumed at stage one.
      p_begin = (idx == 0) ? (M + 9) / 10
                           : (prev_frontier_num * M) / prev_frontier_den + 1;
      p_limit = (4 * M) / 10;
    } else {
      // Anchor: the unconditional tail plus alpha concentration cover
      // kappa >= 0.362.
      p_begin = (idx == 0) ? (362 * M) / 1000
                           : (prev_frontier_num * M + prev_frontier_den - 1) / prev_frontier_den;
      p_limit = (33 * M) / 100;
    }
    StageReport stage = run_stage(M, p_begin, p_limit, regime, margin, workers);
    const bool empty = stage.verified_hi < stage.verified_lo;
    const bool starts_at_begin = !empty && (regime == Regime::head
                                                ? stage.verified_lo == p_begin
                                                : stage.verified_hi == p_begin);
    report.stages.push_back(stage);
    if (empty || !starts_at_begin) {
      report.chain_ok = false;
      report.notes.push_back("stage M=" + std::to_string(M) +
                             " failed to verify its licensed starting cell");
      break;
    }
    if (regime == Regime::head) {
      prev_frontier_num = stage.verified_hi;
      prev_frontier_den = M;
    } else {
      prev_frontier_num = stage.verified_lo - 1;
      prev_frontier_den = M;
    }
  }
  if (report.chain_ok && !report.stages.empty()) {
    const auto& last = report.stages.back();
    report.final_num = (regime == Regime::head) ? last.verified_hi : last.verified_lo;
    report.final_den = last.M;
  }
  return report;
}

namespace {

std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return std::string(buf);
}

double parse_hex_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

std::string cert_to_json(const CertReport& report) {
  json j;
  j["format"] = "indseq.cert/1";
  j["regime"] = report.regime == Regime::head ? "head" : "tail";
  j["margin"] = hex_double(report.margin);
  j["precision_policy"] = report.precision_policy;
  j["chain_ok"] = report.chain_ok;
  j["final"] = {{"num", report.final_num}, {"den", report.final_den}};
  j["notes"] = report.notes;
  j["stages"] = json::array();
  for (const auto& st : report.stages) {
    json s;
    s["M"] = st.M;
    s["p_begin"] = st.p_begin;
    s["p_end"] = st.p_end;
    s["verified_lo"] = st.verified_lo;
    s["verified_hi"] = st.verified_hi;
    s["verdicts"] = json::array();
    for (const auto& v : st.verdicts) {
      s["verdicts"].push_back({{"p", v.p},
                               {"pass", v.pass},
                               {"worst_q", v.worst_q},
                               {"lo", hex_double(v.ratio_lo)},
                               {"hi", hex_double(v.ratio_hi)},
                               {"prec", v.prec_used}});
    }
    j["stages"].push_back(std::move(s));
  }
  return j.dump(1);
}

CertReport cert_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  if (j.at("format").get<std::string>() != "indseq.cert/1")
    throw std::invalid_argument("certificate: unknown format tag");
  CertReport report;
  report.regime = j.at("regime").get<std::string>() == "head" ? Regime::head : Regime::tail;
  report.margin = parse_hex_double(j.at("margin").get<std::string>());
  report.precision_policy = j.at("precision_policy").get<std::string>();
  report.chain_ok = j.at("chain_ok").get<bool>();
  report.final_num = j.at("final").at("num").get<long>();
  report.final_den = j.at("final").at("den").get<long>();
  for (const auto& n : j.at("notes")) report.notes.push_back(n.get<std::string>());
  for (const auto& s : j.at("stages")) {
    StageReport st;
    st.M = s.at("M").get<long>();
    st.p_begin = s.at("p_begin").get<long>();
    st.p_end = s.at("p_end").get<long>();
    st.verified_lo = s.at("verified_lo").get<long>();
    st.verified_hi = s.at("verified_hi").get<long>();
    for (const auto& v : s.at("verdicts")) {
      PVerdict pv;
      pv.p = v.at("p").get<long>();
      pv.pass = v.at("pass").get<bool>();
      pv.worst_q = v.at("worst_q").get<long>();
      pv.ratio_lo = parse_hex_double(v.at("lo").get<std::string>());
      pv.ratio_hi = parse_hex_double(v.at("hi").get<std::string>());
      pv.prec_used = v.at("prec").get<int>();
      st.verdicts.push_back(pv);
    }
    report.stages.push_back(std::move(st));
  }
  return report;
}

ReplayResult replay(const CertReport& report) {
  ReplayResult res;
  auto complain = [&](std::string msg) {
    res.ok = false;
    res.problems.push_back(std::move(msg));
  };
  const double threshold = 1.0 - report.margin;
  long prev_frontier_num = 0, prev_frontier_den = 1;
  for (std::size_t idx = 0; idx < report.stages.size(); ++idx) {
    const auto& st = report.stages[idx];
    const bool head = report.regime == Regime::head;
    // Verdicts must match their recorded enclosures and be contiguous with
    // the scan order.
    long expected_p = st.p_begin;
    const long step = head ? 1 : -1;
    bool seen_pass = false, stopped = false;
    for (const auto& v : st.verdicts) {
      if (v.p != expected_p) complain("stage M=" + std::to_string(st.M) + ": scan order broken");
      expected_p += step;
      if (stopped) complain("stage M=" + std::to_string(st.M) + ": verdicts after stop");
      const bool should_pass = v.ratio_hi < threshold;
      if (v.pass != should_pass)
        complain("stage M=" + std::to_string(st.M) + " p=" + std::to_string(v.p) +
                 ": verdict inconsistent with enclosure");
      if (v.pass)
        seen_pass = true;
      else if (seen_pass)
        stopped = true;
    }
    // Recompute the maximal contiguous verified run.
    long best_len = 0, run_start = -1, run_len = 0, lo = 0, hi = -1;
    for (const auto& v : st.verdicts) {
      if (v.pass) {
        if (run_len == 0) run_start = v.p;
        ++run_len;
        if (run_len > best_len) {
          best_len = run_len;
          lo = std::min(run_start, v.p);
          hi = std::max(run_start, v.p);
        }
      } else {
        run_len = 0;
      }
    }
    if (best_len == 0) {
      lo = 0;
      hi = -1;
    }
    if (lo != st.verified_lo || hi != st.verified_hi)
      complain("stage M=" + std::to_string(st.M) + ": verified range mismatch");
    // Chain conditions.
    if (idx == 0) {
      if (head && st.p_begin > (st.M + 9) / 10)
        complain("head stage one starts above the ceil(M/10) anchor");
      if (!head && st.p_begin < (362 * st.M) / 1000)
        complain("tail stage one starts below the 0.362M anchor");
    } else {
      // (p_begin - 1)/M <= prev frontier (head); p_begin/M >= prev (tail).
      const __int128 left = static_cast<__int128>(head ? st.p_begin - 1 : st.p_begin) *
                            prev_frontier_den;
      const __int128 right = static_cast<__int128>(prev_frontier_num) * st.M;
      if (head ? (left > right) : (left < right))
        complain("stage M=" + std::to_string(st.M) + ": gap from previous frontier");
    }
    if (hi >= lo) {
      prev_frontier_num = head ? hi : lo - 1;
      prev_frontier_den = st.M;
    }
  }
  if (report.chain_ok && !report.stages.empty()) {
    const auto& last = report.stages.back();
    const long expect = report.regime == Regime::head ? last.verified_hi : last.verified_lo;
    if (report.final_num != expect || report.final_den != last.M)
      complain("final constant does not match the last stage");
  }
  return res;
}

}  // namespace indseq
