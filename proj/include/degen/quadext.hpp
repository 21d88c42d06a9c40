#ifndef DEGEN_QUADEXT_HPP
#define DEGEN_QUADEXT_HPP

#include <string>
#include <utility>

#include "degen/rational.hpp"

namespace degen {

/// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)), d squarefree
/// and >= 2. Pure rationals carry d == 0 (and b == 0); arithmetic unifies the
/// radicand, rejecting genuine mixes of different fields. All comparisons are
/// exact sign computations, never floating point.
struct QuadExt {
  Rat a;
  Rat b;
  long d = 0;

  QuadExt() : a(0), b(0), d(0) {}
  QuadExt(Rat rational) : a(std::move(rational)), b(0), d(0) {}
  QuadExt(long rational) : a(rational), b(0), d(0) {}
  QuadExt(Rat ra, Rat rb, long rd);

  bool is_rational() const { return b == 0; }
  bool is_zero() const { return a == 0 && b == 0; }

  // Structural equality coincides with value equality on normalized scalars
  // (b = 0 forces d = 0), and is safe across different fields.
  bool operator==(const QuadExt&) const = default;
};

bool is_squarefree_radicand(long d);

QuadExt qx_add(const QuadExt& x, const QuadExt& y);
QuadExt qx_sub(const QuadExt& x, const QuadExt& y);
QuadExt qx_neg(const QuadExt& x);
QuadExt qx_mul(const QuadExt& x, const QuadExt& y);
QuadExt qx_inv(const QuadExt& x);
QuadExt qx_div(const QuadExt& x, const QuadExt& y);

/// Exact sign: -1, 0, or +1, by case analysis on the signs of a and b and a
/// comparison of a^2 against b^2 d when they disagree.
int qx_sign(const QuadExt& x);

/// Exact three-way comparison: sign of x - y.
int qx_compare(const QuadExt& x, const QuadExt& y);

inline bool qx_eq(const QuadExt& x, const QuadExt& y) { return qx_compare(x, y) == 0; }
inline bool qx_lt(const QuadExt& x, const QuadExt& y) { return qx_compare(x, y) < 0; }
inline bool qx_le(const QuadExt& x, const QuadExt& y) { return qx_compare(x, y) <= 0; }

/// Rational enclosure [lo, hi] of the value with hi - lo <= 10^-digits,
/// via Newton iteration on sqrt(d) from a rational upper bound.
std::pair<Rat, Rat> qx_to_interval(const QuadExt& x, int digits);

/// Canonical rendering: "a" when b = 0; "sqrt(d)" / "-sqrt(d)" / "c*sqrt(d)"
/// when a = 0; otherwise "a + c*sqrt(d)" or "a - c*sqrt(d)".
std::string qx_to_string(const QuadExt& x);

/// Parses the syntax produced by qx_to_string, e.g. "1/2 - 3*sqrt(2)".
QuadExt qx_parse(const std::string& text);

/// Strict total order on values (field elements compare by value; a rational
/// never equals a proper quadratic irrational). Suitable for std::map keys.
struct QuadExtLess {
  bool operator()(const QuadExt& x, const QuadExt& y) const { return qx_lt(x, y); }
};

}  // namespace degen

#endif
