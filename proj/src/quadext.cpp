#include "degen/quadext.hpp"

#include <cctype>
#include <cstdlib>

namespace degen {

namespace {

// Unified radicand for a binary operation; 0 means both operands rational.
long unify_radicand(const QuadExt& x, const QuadExt& y) {
  if (x.d == y.d) return x.d;
  if (x.d == 0) return y.d;
  if (y.d == 0) return x.d;
  fail(ErrCode::MismatchedField,
       "mixed radicands " + std::to_string(x.d) + " and " + std::to_string(y.d));
}

}  // namespace

QuadExt::QuadExt(Rat ra, Rat rb, long rd) : a(std::move(ra)), b(std::move(rb)), d(rd) {
  if (b == 0) {
    d = 0;
  } else {
    if (!is_squarefree_radicand(d))
      fail(ErrCode::ParseError, "radicand " + std::to_string(d) + " is not squarefree and >= 2");
  }
}

bool is_squarefree_radicand(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

QuadExt qx_add(const QuadExt& x, const QuadExt& y) {
  return QuadExt(x.a + y.a, x.b + y.b, unify_radicand(x, y));
}

QuadExt qx_sub(const QuadExt& x, const QuadExt& y) {
  return QuadExt(x.a - y.a, x.b - y.b, unify_radicand(x, y));
}

QuadExt qx_neg(const QuadExt& x) { return QuadExt(-x.a, -x.b, x.d); }

QuadExt qx_mul(const QuadExt& x, const QuadExt& y) {
  long d = unify_radicand(x, y);
  // (a + b sqrt d)(a' + b' sqrt d) = aa' + bb'd + (ab' + a'b) sqrt d
  return QuadExt(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d);
}

QuadExt qx_inv(const QuadExt& x) {
  if (x.is_zero()) fail(ErrCode::DivisionByZero, "division by zero scalar");
  if (x.is_rational()) return QuadExt(1 / x.a, 0, 0);
  // Norm a^2 - b^2 d vanishes only at 0 since sqrt(d) is irrational.
  Rat norm = x.a * x.a - x.b * x.b * x.d;
  return QuadExt(x.a / norm, -x.b / norm, x.d);
}

QuadExt qx_div(const QuadExt& x, const QuadExt& y) { return qx_mul(x, qx_inv(y)); }

int qx_sign(const QuadExt& x) {
  int sa = sgn(x.a);
  int sb = sgn(x.b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare |a| against |b| sqrt(d) by squaring (both sides
  // positive), i.e. the sign is that of the larger magnitude side.
  Rat a2 = x.a * x.a;
  Rat b2d = x.b * x.b * x.d;
  int c = cmp(a2, b2d);
  if (c == 0) return 0;  // impossible for squarefree d >= 2, kept for safety
  return c > 0 ? sa : sb;
}

int qx_compare(const QuadExt& x, const QuadExt& y) { return qx_sign(qx_sub(x, y)); }

std::pair<Rat, Rat> qx_to_interval(const QuadExt& x, int digits) {
  if (digits < 0) digits = 0;
  if (x.is_rational()) return {x.a, x.a};
  // Enclose sqrt(d) within eps = 10^-digits / |b| so the scaled interval has
  // width <= 10^-digits.
  Rat babs = abs(x.b);
  Rat eps = 1;
  for (int i = 0; i < digits; ++i) eps /= 10;
  eps /= babs;
  Rat dd(x.d);
  Rat hi = dd;  // d >= 2 implies d >= sqrt(d)
  while (hi - dd / hi > eps) hi = (hi + dd / hi) / 2;
  Rat lo = dd / hi;  // lo <= sqrt(d) <= hi
  Rat vlo = (sgn(x.b) > 0) ? x.a + x.b * lo : x.a + x.b * hi;
  Rat vhi = (sgn(x.b) > 0) ? x.a + x.b * hi : x.a + x.b * lo;
  return {vlo, vhi};
}

std::string qx_to_string(const QuadExt& x) {
  if (x.is_rational()) return rat_to_string(x.a);
  std::string root = "sqrt(" + std::to_string(x.d) + ")";
  Rat babs = abs(x.b);
  std::string bpart = (babs == 1) ? root : rat_to_string(babs) + "*" + root;
  if (x.a == 0) return sgn(x.b) < 0 ? "-" + bpart : bpart;
  return rat_to_string(x.a) + (sgn(x.b) < 0 ? " - " : " + ") + bpart;
}

namespace {

struct ScalarParser {
  const std::string& s;
  size_t pos = 0;

  explicit ScalarParser(const std::string& text) : s(text) {}

  [[noreturn]] void err(const std::string& message) {
    fail(ErrCode::ParseError, message + " in scalar '" + s + "' at offset " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool peek_digit() {
    skip_ws();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }

  bool peek_word(const std::string& w) {
    skip_ws();
    return s.compare(pos, w.size(), w) == 0;
  }

  mpz_class integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) err("expected integer");
    return mpz_class(s.substr(start, pos - start));
  }

  Rat rational() {
    mpz_class num = integer();
    if (eat('/')) {
      mpz_class den = integer();
      if (den == 0) err("zero denominator");
      Rat q(num, den);
      q.canonicalize();
      return q;
    }
    return Rat(num);
  }

  long radicand() {
    // "sqrt" "(" int ")"
    skip_ws();
    if (s.compare(pos, 4, "sqrt") != 0) err("expected sqrt");
    pos += 4;
    if (!eat('(')) err("expected '('");
    mpz_class d = integer();
    if (!eat(')')) err("expected ')'");
    if (!d.fits_slong_p()) err("radicand too large");
    long dl = d.get_si();
    if (!is_squarefree_radicand(dl)) err("radicand not squarefree and >= 2");
    return dl;
  }

  // One signed term added into the accumulator.
  void term(int sign, Rat& acc_a, Rat& acc_b, long& acc_d) {
    if (peek_word("sqrt")) {
      long dl = radicand();
      if (acc_d != 0 && acc_d != dl) err("mixed radicands");
      acc_d = dl;
      acc_b += sign;
      return;
    }
    Rat coeff = rational();
    if (eat('*')) {
      long dl = radicand();
      if (acc_d != 0 && acc_d != dl) err("mixed radicands");
      acc_d = dl;
      acc_b += sign * coeff;
      return;
    }
    acc_a += sign * coeff;
  }

  QuadExt parse() {
    Rat acc_a(0), acc_b(0);
    long acc_d = 0;
    int sign = eat('-') ? -1 : (eat('+'), 1);
    term(sign, acc_a, acc_b, acc_d);
    for (;;) {
      skip_ws();
      if (pos >= s.size()) break;
      if (eat('+')) {
        term(1, acc_a, acc_b, acc_d);
      } else if (eat('-')) {
        term(-1, acc_a, acc_b, acc_d);
      } else {
        err("unexpected character");
      }
    }
    return QuadExt(acc_a, acc_b, acc_b == 0 ? 0 : acc_d);
  }
};

}  // namespace

QuadExt qx_parse(const std::string& text) { return ScalarParser(text).parse(); }

}  // namespace degen
