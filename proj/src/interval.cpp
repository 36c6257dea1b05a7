#include "indseq/interval.hpp"

#include <cassert>
#include <stdexcept>

namespace indseq {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    if (prec_ != o.prec_) {
      mpfr_set_prec(lo_, o.prec_);
      mpfr_set_prec(hi_, o.prec_);
      prec_ = o.prec_;
    }
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_long(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_ratio(long num, long den, mpfr_prec_t prec) {
  if (den <= 0) throw std::invalid_argument("Interval::from_ratio: den must be positive");
  Interval r(prec);
  mpfr_set_si(r.lo_, num, MPFR_RNDD);
  mpfr_set_si(r.hi_, num, MPFR_RNDU);
  mpfr_div_si(r.lo_, r.lo_, den, MPFR_RNDD);
  mpfr_div_si(r.hi_, r.hi_, den, MPFR_RNDU);
  return r;
}

Interval Interval::point(const mpfr_t v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set(r.lo_, v, MPFR_RNDD);
  mpfr_set(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set(r.lo_, lo, MPFR_RNDD);
  mpfr_set(r.hi_, hi, MPFR_RNDU);
  return r;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

bool Interval::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_nonnegative() const { return mpfr_sgn(lo_) >= 0; }
bool Interval::hi_less_than(double bound) const { return mpfr_cmp_d(hi_, bound) < 0; }
bool Interval::lo_at_least(double bound) const { return mpfr_cmp_d(lo_, bound) >= 0; }

Interval Interval::operator+(const Interval& o) const {
  Interval r(prec_);
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(prec_);
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  Interval r(prec_);
  mpfr_t tmp;
  mpfr_init2(tmp, prec_);
  // lo: minimum of the four endpoint products, each rounded down.
  mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(tmp, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, tmp, MPFR_RNDD);
  mpfr_mul(tmp, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, tmp, MPFR_RNDD);
  mpfr_mul(tmp, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, tmp, MPFR_RNDD);
  // hi: maximum of the four, rounded up.
  mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(tmp, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, tmp, MPFR_RNDU);
  mpfr_mul(tmp, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, tmp, MPFR_RNDU);
  mpfr_mul(tmp, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, tmp, MPFR_RNDU);
  mpfr_clear(tmp);
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0)
    throw std::domain_error("Interval: division by interval containing zero");
  Interval recip(prec_);
  mpfr_ui_div(recip.lo_, 1, o.hi_, MPFR_RNDD);
  mpfr_ui_div(recip.hi_, 1, o.lo_, MPFR_RNDU);
  return *this * recip;
}

Interval Interval::neg() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::expm1() const {
  Interval r(prec_);
  mpfr_expm1(r.lo_, lo_, MPFR_RNDD);
  mpfr_expm1(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("Interval::log: negative operand");
  Interval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log2() const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("Interval::log2: negative operand");
  Interval r(prec_);
  mpfr_log2(r.lo_, lo_, MPFR_RNDD);
  mpfr_log2(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp2() const {
  Interval r(prec_);
  mpfr_exp2(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp2(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(const Interval& e) const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("Interval::pow: negative base");
  if (mpfr_sgn(lo_) == 0 && mpfr_sgn(e.lo_) <= 0)
    throw std::domain_error("Interval::pow: zero base needs a positive exponent");
  return (e * log()).exp();  // log(0) = -inf, exp(-inf) = 0: sound for zero lo
}

Interval Interval::min(const Interval& a, const Interval& b) {
  Interval r(a.prec_);
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::max(const Interval& a, const Interval& b) {
  Interval r(a.prec_);
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

}  // namespace indseq
