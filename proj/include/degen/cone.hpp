#ifndef DEGEN_CONE_HPP
#define DEGEN_CONE_HPP

#include <utility>
#include <vector>

#include "degen/quadext.hpp"

namespace degen {

/// Integer lattice vector; the rank is the vector length.
using LatVec = std::vector<long long>;

/// Weight direction in N ⊗ R with coordinates in Q(sqrt(d)).
using XiVec = std::vector<QuadExt>;

long long dot_ll(const LatVec& x, const LatVec& y);
QuadExt pairing(const LatVec& m, const XiVec& xi);
LatVec primitivized(LatVec v);
bool lex_less(const LatVec& x, const LatVec& y);
LatVec lat_add(const LatVec& x, const LatVec& y);
LatVec lat_scale(const LatVec& x, long long c);
bool lat_is_zero(const LatVec& x);
std::string lat_to_string(const LatVec& v);

/// V-description of a cone: span(lineality) + nonneg combinations of rays.
struct VRep {
  std::vector<LatVec> lineality;
  std::vector<LatVec> rays;
};

/// Extreme rays and lineality of {x : <a, x> >= 0 for all a in constraints},
/// by double-description insertion. Exact integer arithmetic throughout.
VRep polar(int rank, const std::vector<LatVec>& constraints);

/// Rational polyhedral cone in canonical form: primitive generators, extreme
/// rays plus a +/- pair per saturated lineality basis vector, sorted
/// lexicographically and duplicate-free. Construct through make_cone.
struct RationalCone {
  int rank = 0;
  std::vector<LatVec> generators;

  bool operator==(const RationalCone& other) const = default;
};

RationalCone make_cone(int rank, std::vector<LatVec> generators);

/// Generators of {m : <m, c> >= 0}; canonical order. Rank at most 4.
RationalCone dual_cone(const RationalCone& c);

/// Solution cone of the integer inequalities <a, x> >= 0, in canonical form.
RationalCone cone_from_inequalities(int rank, const std::vector<LatVec>& normals);

bool cone_is_pointed(const RationalCone& c);
bool cone_contains(const RationalCone& c, const XiVec& xi);
bool cone_contains_lat(const RationalCone& c, const LatVec& v);
/// Membership in the relative interior (strict on facet normals, zero on the
/// span's defining equations).
bool cone_contains_strict(const RationalCone& c, const XiVec& xi);

/// Unique minimal generating set of the monoid c ∩ lattice, for pointed cones
/// of rank at most 3. Sorted lexicographically.
std::vector<LatVec> hilbert_basis(const RationalCone& c);

/// True iff no nonzero integer vector m has <m, xi> = 0, decided by the
/// common rational kernel of the a-part and b-part linear systems.
bool certify_irrational(const XiVec& xi);

/// Primitive integer basis (canonical Hermite form) of the kernel of the
/// given rational row system; the kernel lattice is saturated.
std::vector<LatVec> rational_kernel(const std::vector<std::vector<Rat>>& rows, int ncols);

/// One wall of the lower envelope: a valuation level and a pairing-magnitude
/// slope attached to a coordinate index.
struct WallPoint {
  Rat level;
  QuadExt slope;
  int label = 0;
};

/// Ratios level/slope sorted strictly decreasing with duplicates merged: the
/// candidate crossing scales; the last (smallest) entry is the critical scale.
std::vector<QuadExt> envelope_breakpoints(const std::vector<WallPoint>& walls);

/// Same computation on quadratic-extension levels (used by iterated
/// reduction steps whose valuations leave the rationals).
std::vector<QuadExt> envelope_scales(const std::vector<std::pair<QuadExt, QuadExt>>& level_slope);

}  // namespace degen

#endif
