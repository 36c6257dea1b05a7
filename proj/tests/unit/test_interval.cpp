#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "indseq/exact.hpp"
#include "indseq/interval.hpp"
#include "indseq/rng.hpp"

using namespace indseq;

namespace {

Rational rand_rational(SplitMix64& rng) {
  const long num = static_cast<long>(rng.below(2001)) - 1000;
  const long den = static_cast<long>(rng.below(50)) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("field operations always contain the exact rational value") {
  SplitMix64 rng(6174);
  const mpfr_prec_t prec = 64;
  long ops = 0;
  while (ops < 1000000) {
    Rational qa = rand_rational(rng);
    Rational qb = rand_rational(rng);
    Interval a = Interval::from_ratio(static_cast<long>(qa.get_num().get_si()),
                                      static_cast<long>(qa.get_den().get_si()), prec);
    Interval b = Interval::from_ratio(static_cast<long>(qb.get_num().get_si()),
                                      static_cast<long>(qb.get_den().get_si()), prec);
    // Chain of ten random operations on (a, qa).
    for (int step = 0; step < 10; ++step, ++ops) {
      switch (rng.below(4)) {
        case 0:
          a = a + b;
          qa += qb;
          break;
        case 1:
          a = a - b;
          qa -= qb;
          break;
        case 2:
          a = a * b;
          qa *= qb;
          break;
        default:
          if (qb == 0) break;
          a = a / b;
          qa /= qb;
          break;
      }
      if (!a.contains(qa)) {
        CAPTURE(step);
        REQUIRE(a.contains(qa));
      }
    }
  }
}

TEST_CASE("transcendental enclosures contain a high-precision reference") {
  SplitMix64 rng(31415);
  mpfr_t ref, x;
  mpfr_init2(ref, 320);
  mpfr_init2(x, 320);
  for (int i = 0; i < 20000; ++i) {
    const long num = static_cast<long>(rng.below(4000)) + 1;
    const long den = static_cast<long>(rng.below(400)) + 1;
    Interval v = Interval::from_ratio(num, den, 64);
    mpfr_set_si(x, num, MPFR_RNDN);
    mpfr_div_si(x, x, den, MPFR_RNDN);

    Interval ev = v.exp();
    mpfr_exp(ref, x, MPFR_RNDN);
    CHECK(mpfr_cmp(ev.lo(), ref) <= 0);
    CHECK(mpfr_cmp(ev.hi(), ref) >= 0);

    Interval lv = v.log();
    mpfr_log(ref, x, MPFR_RNDN);
    CHECK(mpfr_cmp(lv.lo(), ref) <= 0);
    CHECK(mpfr_cmp(lv.hi(), ref) >= 0);

    Interval e2 = v.exp2();
    mpfr_exp2(ref, x, MPFR_RNDN);
    CHECK(mpfr_cmp(e2.lo(), ref) <= 0);
    CHECK(mpfr_cmp(e2.hi(), ref) >= 0);
  }
  mpfr_clears(ref, x, static_cast<mpfr_ptr>(nullptr));
}

TEST_CASE("pow handles zero lower endpoints") {
  Interval zero = Interval::from_long(0, 64);
  Interval e = Interval::from_ratio(1, 3, 64);
  Interval p = zero.pow(e);
  CHECK(p.lo_double() == 0.0);
  CHECK(p.hi_double() == 0.0);
  CHECK_THROWS(zero.pow(Interval::from_long(0, 64)));
  CHECK_THROWS(Interval::from_long(-1, 64).pow(e));
}

TEST_CASE("division by an interval containing zero is rejected") {
  Interval a = Interval::from_long(1, 64);
  Interval z = Interval::from_long(-1, 64) + Interval::from_long(1, 64) * Interval::from_long(1, 64);
  CHECK_THROWS(a / Interval::from_long(0, 64));
  (void)z;
}

TEST_CASE("interval min max and width sanity") {
  Interval a = Interval::from_ratio(1, 3, 64);
  Interval b = Interval::from_ratio(1, 2, 64);
  CHECK(Interval::min(a, b).hi_double() == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(Interval::max(a, b).lo_double() == doctest::Approx(0.5).epsilon(1e-15));
  // Tight at double resolution (the 64-bit enclosure rounds outward once).
  const double width = a.hi_double() - a.lo_double();
  CHECK(width >= 0.0);
  CHECK(width < 1e-15);
}
