#ifndef DEGEN_NOVIKOV_HPP
#define DEGEN_NOVIKOV_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "degen/quadext.hpp"

namespace degen {

/// Finitely generated submonoid of the nonnegative reals inside Q(sqrt(d)),
/// kept in canonical form: generators sorted increasing, duplicate-free,
/// with decomposable elements stripped.
struct GammaMonoid {
  long d = 0;
  std::vector<QuadExt> generators;

  bool operator==(const GammaMonoid&) const = default;
};

/// Canonicalizes a generator list: validates signs and radicands, sorts,
/// deduplicates, and strips every generator that is a sum of two or more
/// monoid elements.
GammaMonoid make_monoid(long d, std::vector<QuadExt> generators);

/// Exact membership of a nonnegative value, by memoized decomposition search
/// over the generators.
bool monoid_contains(const GammaMonoid& m, const QuadExt& value);

/// Series with exponents in Q(sqrt(d)) known modulo t^precision: the list of
/// (exponent, coefficient) terms is sorted by strictly increasing exponent,
/// stores no zero coefficients, and keeps only exponents below the precision.
struct NovikovSeries {
  std::vector<std::pair<QuadExt, Rat>> terms;
  QuadExt precision;
};

/// Normalizes a term list (sort, merge equal exponents, drop zeros and terms
/// at or above the precision).
NovikovSeries make_series(std::vector<std::pair<QuadExt, Rat>> terms, QuadExt precision);

NovikovSeries series_add(const NovikovSeries& a, const NovikovSeries& b);
NovikovSeries series_mul(const NovikovSeries& a, const NovikovSeries& b);

/// Multiplication by the monomial t^shift; exponents and precision both move.
NovikovSeries series_shift(const NovikovSeries& a, const QuadExt& shift);

/// Exponent of the first term; empty when the series is zero modulo its
/// precision.
std::optional<QuadExt> series_valuation(const NovikovSeries& a);

/// Coefficient of t^e (zero when no such term is stored).
Rat series_coeff_at(const NovikovSeries& a, const QuadExt& e);

/// Canonical rendering `c1 t^(e1) + c2 t^(e2) + O(t^(p))`.
std::string series_to_string(const NovikovSeries& a);

/// Base-ring bookkeeping across reduction steps: the exponent monoid, the
/// pairing values available for forming future extension generators, and the
/// list of applied relations pi = chi^m recorded as (pi_valuation, m_value).
struct RingDesc {
  GammaMonoid monoid;
  std::vector<QuadExt> pairing_generators;
  std::vector<std::pair<QuadExt, QuadExt>> relations;

  bool operator==(const RingDesc&) const = default;
};

RingDesc make_ring(long d, std::vector<QuadExt> monoid_generators,
                   std::vector<QuadExt> pairing_generators);

/// Adjoins the solutions of pi = chi^m: the new exponent monoid is generated
/// by the old generators together with b times each pairing generator, where
/// b = pi_valuation / m_value; the relation is recorded.
RingDesc extend_ring(const RingDesc& ring, const QuadExt& pi_valuation, const QuadExt& m_value);

/// Canonical minimal generator list of the ring's exponent monoid.
std::vector<QuadExt> graded_generators(const RingDesc& ring);

}  // namespace degen

#endif
