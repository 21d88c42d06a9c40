#ifndef DEGEN_RATIONAL_HPP
#define DEGEN_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "degen/errors.hpp"

namespace degen {

/// Exact rational numbers. GMP keeps values canonical (reduced, positive
/// denominator) as long as they are built through arithmetic or make_rat.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) fail(ErrCode::ParseError, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Canonical rendering: "a" for integers, "a/b" otherwise, '-' up front.
inline std::string rat_to_string(const Rat& q) {
  return q.get_str();
}

inline int rat_sign(const Rat& q) { return sgn(q); }

}  // namespace degen

#endif
