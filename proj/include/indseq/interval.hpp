#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace indseq {

// Outward-rounded interval over MPFR reals at a fixed significand
// precision: lo is always rounded down, hi always up, so the true value of
// any composed expression stays inside.  MPFR's correctly-rounded exp/log
// supply the proven error bounds for the transcendental kernels.
class Interval {
 public:
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval from_long(long v, mpfr_prec_t prec);
  static Interval from_ratio(long num, long den, mpfr_prec_t prec);  // den > 0
  static Interval point(const mpfr_t v, mpfr_prec_t prec);
  // [lo, hi] from two already-directed endpoints.
  static Interval from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return prec_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up

  bool contains(const mpq_class& q) const;
  bool is_positive() const;            // lo > 0
  bool is_nonnegative() const;         // lo >= 0
  bool hi_less_than(double bound) const;
  bool lo_at_least(double bound) const;

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;  // o must not contain 0
  Interval neg() const;

  Interval exp() const;
  Interval expm1() const;
  Interval log() const;   // requires lo >= 0 (log 0 = -inf is allowed)
  Interval log2() const;  // same domain rule
  Interval exp2() const;
  // this^e via exp(e * log(this)); requires lo >= 0, and e.lo > 0 whenever
  // lo == 0 (so 0^e = 0 stays well defined).
  Interval pow(const Interval& e) const;

  static Interval min(const Interval& a, const Interval& b);
  static Interval max(const Interval& a, const Interval& b);

 private:
  explicit Interval(mpfr_prec_t prec);
  mpfr_t lo_;
  mpfr_t hi_;
  mpfr_prec_t prec_;
};

}  // namespace indseq
