#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "degen/quadext.hpp"

using namespace degen;

namespace {

QuadExt qx(long a_num, long a_den, long b_num, long b_den, long d) {
  return QuadExt(make_rat(a_num, a_den), make_rat(b_num, b_den), d);
}

QuadExt random_qx(std::mt19937_64& rng, long d, long span = 20) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, 12);
  return QuadExt(make_rat(num(rng), den(rng)), make_rat(num(rng), den(rng)), d);
}

// Interval-based comparison oracle at 100 digits: returns the sign of x
// whenever the enclosure does not straddle zero.
int interval_sign(const QuadExt& x) {
  auto [lo, hi] = qx_to_interval(x, 100);
  if (sgn(lo) > 0) return 1;
  if (sgn(hi) < 0) return -1;
  if (lo == hi) return sgn(lo);
  // Enclosure straddling zero at 100 digits: treat as zero for the oracle;
  // exact arithmetic below decides.
  return 0;
}

}  // namespace

TEST_CASE("field arithmetic on pinned examples") {
  QuadExt one_plus = qx(1, 1, 1, 1, 2);
  QuadExt one_minus = qx(1, 1, -1, 1, 2);

  QuadExt prod = qx_mul(one_plus, one_minus);
  CHECK(prod.is_rational());
  CHECK(prod.a == -1);

  QuadExt three_rt2 = qx(0, 1, 3, 1, 2);
  QuadExt rt2 = qx(0, 1, 1, 1, 2);
  QuadExt quot = qx_div(three_rt2, rt2);
  CHECK(quot.is_rational());
  CHECK(quot.a == 3);

  QuadExt ratio = qx_div(one_plus, one_minus);
  CHECK(qx_eq(ratio, qx(-3, 1, -2, 1, 2)));
}

TEST_CASE("sign case analysis is exact near cancellation") {
  // 665857/470832 is a continued-fraction convergent of sqrt(2); the
  // difference from sqrt(2) is ~2e-12 and must still get the right sign.
  QuadExt close = qx_sub(QuadExt(make_rat(665857, 470832)), qx(0, 1, 1, 1, 2));
  CHECK(qx_sign(close) == 1);
  QuadExt close2 = qx_sub(QuadExt(make_rat(470832, 665857)), qx(0, 1, 1, 2, 2));
  // 470832/665857 < sqrt(2)/2
  CHECK(qx_sign(close2) == -1);

  CHECK(qx_sign(QuadExt()) == 0);
  CHECK(qx_sign(qx(0, 1, -1, 3, 3)) == -1);
  CHECK(qx_sign(qx(2, 1, -1, 1, 2)) == 1);   // 2 > sqrt(2)
  CHECK(qx_sign(qx(1, 1, -1, 1, 2)) == -1);  // 1 < sqrt(2)
}

TEST_CASE("comparisons agree with 100-digit interval oracle") {
  std::mt19937_64 rng(20260825);
  for (int i = 0; i < 2000; ++i) {
    long d = (i % 3 == 0) ? 2 : (i % 3 == 1) ? 3 : 5;
    QuadExt x = random_qx(rng, d);
    QuadExt y = random_qx(rng, d);
    int exact = qx_compare(x, y);
    int oracle = interval_sign(qx_sub(x, y));
    if (oracle != 0) {
      CAPTURE(qx_to_string(x));
      CAPTURE(qx_to_string(y));
      REQUIRE(exact == oracle);
    } else {
      REQUIRE(exact == 0);
    }
  }
}

TEST_CASE("interval enclosure meets the width contract and brackets the value") {
  std::mt19937_64 rng(7);
  Rat width_bound = 1;
  for (int i = 0; i < 30; ++i) width_bound /= 10;
  for (int i = 0; i < 200; ++i) {
    QuadExt x = random_qx(rng, 2);
    auto [lo, hi] = qx_to_interval(x, 30);
    REQUIRE(hi - lo <= width_bound);
    // Exact bracketing: lo <= x <= hi.
    REQUIRE(qx_sign(qx_sub(x, QuadExt(lo))) >= 0);
    REQUIRE(qx_sign(qx_sub(QuadExt(hi), x)) >= 0);
  }
}

TEST_CASE("parse and print round-trip") {
  const char* samples[] = {
      "0",           "-5",
      "3/2",         "sqrt(2)",
      "-sqrt(3)",    "1 + sqrt(2)",
      "1/2 - 3*sqrt(2)", "-7/3 + 11/4*sqrt(5)",
      "2 - 3/2*sqrt(2)",
  };
  for (const char* s : samples) {
    QuadExt v = qx_parse(s);
    CHECK(qx_to_string(v) == s);
    CHECK(qx_eq(qx_parse(qx_to_string(v)), v));
  }
  // Non-canonical inputs normalize.
  CHECK(qx_to_string(qx_parse("1*sqrt(2)")) == "sqrt(2)");
  CHECK(qx_to_string(qx_parse("0 + 0*sqrt(2)")) == "0");
  CHECK(qx_to_string(qx_parse("2/4")) == "1/2");
  CHECK(qx_to_string(qx_parse("sqrt(2) + sqrt(2)")) == "2*sqrt(2)");

  CHECK_THROWS_AS(qx_parse("sqrt(4)"), Error);
  CHECK_THROWS_AS(qx_parse("sqrt(2) + sqrt(3)"), Error);
  CHECK_THROWS_AS(qx_parse("1/0"), Error);
  CHECK_THROWS_AS(qx_parse("x"), Error);
}

TEST_CASE("division and inverse") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    QuadExt x = random_qx(rng, 2);
    if (x.is_zero()) continue;
    QuadExt prod = qx_mul(x, qx_inv(x));
    CHECK(qx_eq(prod, QuadExt(1)));
  }
  CHECK_THROWS_AS(qx_inv(QuadExt()), Error);
}
