#ifndef DEGEN_REDUCTION_HPP
#define DEGEN_REDUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "degen/cone.hpp"
#include "degen/groebner.hpp"
#include "degen/novikov.hpp"
#include "degen/polynomial.hpp"

namespace degen {

/// One-parameter family of points of affine space: one truncated series per
/// coordinate, the diagonal torus action on the ambient space, and optionally
/// a torus-homogeneous ideal the family is required to satisfy.
struct ArcFamily {
  std::vector<NovikovSeries> coordinates;
  TorusAction action;
  std::optional<std::vector<Polynomial>> ambient_ideal;
};

/// Attractor stratum of a weight cone: the coordinates that must vanish on
/// the attracting locus. Indices are zero-based and sorted ascending.
struct StrataSpec {
  RationalCone cone;
  std::vector<int> destabilized;

  bool operator==(const StrataSpec&) const = default;
};

/// Coordinates pairing strictly negatively with some generator of tau.
StrataSpec attractor_locus(const TorusAction& action, const RationalCone& tau);

enum class ArcClass { SpecialInGenericOut, BothIn, BothOut, PrecisionExhausted };

/// Locates the special (t = 0) and generic fibers of the arc relative to the
/// stratum {z_j = 0 for all destabilized j}. PrecisionExhausted marks a
/// destabilized coordinate that vanishes to its stored precision, which the
/// truncation cannot distinguish from an exact zero.
ArcClass classify_arc(const ArcFamily& arc, const StrataSpec& strata);

/// Crossing data of the lower valuation envelope along the ray c -> c * xi.
struct CriticalScale {
  QuadExt scale;
  std::vector<int> exit_set;
  std::vector<QuadExt> walls;
};

/// Smallest c with val(z_j) + c * <w_j, xi> = 0 over destabilized j, the
/// indices attaining it, and the full decreasing wall list of candidate
/// crossings.
CriticalScale critical_scale(const ArcFamily& arc, const StrataSpec& strata, const XiVec& xi);

/// Result of rescaling the arc by the one-parameter subgroup of xi at scale c.
struct Modification {
  std::vector<NovikovSeries> coordinates;
  std::vector<Rat> limit_point;
  RingDesc base_ring;
};

/// Coordinate j becomes t^{c * <w_j, xi>} * z_j(t); the limit point collects
/// the exponent-zero coefficients. The base ring starts from `ring` when
/// given (or from the arc's own exponents) and is extended once, recording
/// the relation pi = chi^m for the pairing m in the denominator of c.
Modification elementary_modification(const ArcFamily& arc, const XiVec& xi, const QuadExt& c,
                                     const RingDesc* ring = nullptr);

enum class FlowDirection { TowardFixed };

/// Projection of a closed point onto the xi-fixed locus: coordinates whose
/// weight pairs to zero with xi survive, every other coordinate flows to 0.
std::vector<Rat> limit_along(const std::vector<Rat>& point, const TorusAction& action,
                             const XiVec& xi, FlowDirection direction = FlowDirection::TowardFixed);

/// One semistable reduction step: scale, exits, modified family, its limit,
/// the deeper limit on the fixed locus, base-ring bookkeeping, and the walls.
struct ReductionStep {
  QuadExt critical_scale;
  std::vector<int> exit_set;
  std::vector<NovikovSeries> new_family;
  std::vector<Rat> limit_point;
  std::vector<Rat> deeper_limit;
  RingDesc base_ring;
  std::vector<QuadExt> wall_scales;
};

/// Composes critical_scale and elementary_modification at the critical scale,
/// verifies the limit leaves the stratum and satisfies the ambient ideal, and
/// records the deeper limit (which lands back in the stratum).
ReductionStep semistable_reduce(const ArcFamily& arc, const StrataSpec& strata, const XiVec& xi,
                                const RingDesc* ring = nullptr);

/// Outcome of replaying a reduction step with a rational direction.
struct ApproxCheck {
  bool match = false;
  std::string witness;  // "exit_set" or "limit" when match is false

  bool operator==(const ApproxCheck&) const = default;
};

/// Reruns the critical-scale computation with the rational direction xi2 and
/// compares exit set and limit point against the recorded step.
ApproxCheck check_rational_approx(const ReductionStep& step, const ArcFamily& arc,
                                  const StrataSpec& strata, const LatVec& xi2);

/// One stratum of a stratification: a strictly increasing label, the locus,
/// and the weight direction used to reduce against it.
struct Stratum {
  Rat label;
  StrataSpec strata;
  XiVec xi_choice;
};

using Stratification = std::vector<Stratum>;

/// Repeatedly applies semistable_reduce against the lowest-labelled stratum
/// still containing the special fiber, threading the base ring, until the
/// family's special fiber lies in no listed stratum. Labels must ascend
/// strictly along the steps.
std::vector<ReductionStep> iterate_reduction(const ArcFamily& arc, const Stratification& strat);

}  // namespace degen

#endif
