#include "degen/reduction.hpp"

#include <algorithm>

namespace degen {

namespace {

void check_arc_shape(const ArcFamily& arc) {
  if (arc.coordinates.empty()) fail(ErrCode::EmptyInput, "arc has no coordinates");
  if (arc.coordinates.size() != arc.action.weights.size())
    fail(ErrCode::ShapeMismatch, "arc coordinate count differs from the action's variable count");
  for (const LatVec& w : arc.action.weights)
    if (static_cast<int>(w.size()) != arc.action.rank)
      fail(ErrCode::RankMismatch, "action weight rank differs from the action rank");
}

void check_strata_shape(const ArcFamily& arc, const StrataSpec& strata) {
  for (int j : strata.destabilized)
    if (j < 0 || j >= static_cast<int>(arc.coordinates.size()))
      fail(ErrCode::ShapeMismatch, "destabilized index out of range");
}

void check_xi_rank(const ArcFamily& arc, const XiVec& xi) {
  if (static_cast<int>(xi.size()) != arc.action.rank)
    fail(ErrCode::RankMismatch, "weight direction rank differs from the action rank");
}

// Radicand shared by the direction and the arc exponents; 0 when everything
// is rational.
long common_radicand(const ArcFamily& arc, const XiVec& xi) {
  long d = 0;
  auto absorb = [&d](long e) {
    if (e == 0) return;
    if (d == 0) d = e;
    if (e != d) fail(ErrCode::MismatchedField, "mixed radicands in one reduction problem");
  };
  for (const QuadExt& x : xi) absorb(x.d);
  for (const NovikovSeries& z : arc.coordinates) {
    for (const auto& [e, c] : z.terms) absorb(e.d);
    absorb(z.precision.d);
  }
  return d;
}

// Base ring of the unmodified family: the exponents already in use, with the
// pairing magnitudes of the action available for future extensions.
RingDesc initial_ring(const ArcFamily& arc, const XiVec& xi) {
  long d = common_radicand(arc, xi);
  std::vector<QuadExt> monoid_gens = {QuadExt(1)};
  for (const NovikovSeries& z : arc.coordinates)
    for (const auto& [e, c] : z.terms)
      if (qx_sign(e) > 0) monoid_gens.push_back(e);
  std::vector<QuadExt> pairing_gens;
  for (const LatVec& w : arc.action.weights) {
    QuadExt p = pairing(w, xi);
    if (qx_sign(p) < 0) p = qx_neg(p);
    if (qx_sign(p) > 0) pairing_gens.push_back(p);
  }
  std::sort(pairing_gens.begin(), pairing_gens.end(), qx_lt);
  pairing_gens.erase(std::unique(pairing_gens.begin(), pairing_gens.end(), qx_eq),
                     pairing_gens.end());
  return make_ring(d, std::move(monoid_gens), std::move(pairing_gens));
}

// Merges the current pairing magnitudes into a ring carried over from an
// earlier step, so extensions formed under a new direction stay available.
RingDesc merge_pairings(RingDesc ring, const ArcFamily& arc, const XiVec& xi) {
  for (const LatVec& w : arc.action.weights) {
    QuadExt p = pairing(w, xi);
    if (qx_sign(p) < 0) p = qx_neg(p);
    if (qx_sign(p) > 0) ring.pairing_generators.push_back(p);
  }
  std::sort(ring.pairing_generators.begin(), ring.pairing_generators.end(), qx_lt);
  ring.pairing_generators.erase(
      std::unique(ring.pairing_generators.begin(), ring.pairing_generators.end(), qx_eq),
      ring.pairing_generators.end());
  return ring;
}

Rat eval_poly(const Polynomial& f, const std::vector<Rat>& point) {
  Rat total(0);
  for (const auto& [expo, coeff] : f.terms) {
    Rat value = coeff;
    for (size_t j = 0; j < expo.size(); ++j)
      for (int k = 0; k < expo[j]; ++k) value *= point[j];
    total += value;
  }
  return total;
}

}  // namespace

StrataSpec attractor_locus(const TorusAction& action, const RationalCone& tau) {
  if (tau.rank != action.rank)
    fail(ErrCode::RankMismatch, "cone rank differs from the action rank");
  for (const LatVec& w : action.weights)
    if (static_cast<int>(w.size()) != action.rank)
      fail(ErrCode::RankMismatch, "action weight rank differs from the action rank");
  StrataSpec out;
  out.cone = tau;
  for (size_t j = 0; j < action.weights.size(); ++j)
    for (const LatVec& g : tau.generators)
      if (dot_ll(action.weights[j], g) < 0) {
        out.destabilized.push_back(static_cast<int>(j));
        break;
      }
  return out;
}

ArcClass classify_arc(const ArcFamily& arc, const StrataSpec& strata) {
  check_arc_shape(arc);
  check_strata_shape(arc, strata);
  if (strata.destabilized.empty()) return ArcClass::BothIn;

  bool some_nonzero = false;
  bool precision_ok = true;
  for (int j : strata.destabilized) {
    const NovikovSeries& z = arc.coordinates[j];
    std::optional<QuadExt> v = series_valuation(z);
    if (v) {
      if (qx_sign(*v) <= 0) return ArcClass::BothOut;
      some_nonzero = true;
    } else if (qx_sign(z.precision) <= 0) {
      precision_ok = false;
    }
  }
  if (some_nonzero && precision_ok) return ArcClass::SpecialInGenericOut;
  return ArcClass::PrecisionExhausted;
}

CriticalScale critical_scale(const ArcFamily& arc, const StrataSpec& strata, const XiVec& xi) {
  check_xi_rank(arc, xi);
  ArcClass cls = classify_arc(arc, strata);
  if (cls != ArcClass::SpecialInGenericOut)
    fail(ErrCode::PreconditionViolated,
         "arc must sit in the stratum at the special fiber and leave it generically");
  if (!cone_contains(strata.cone, xi))
    fail(ErrCode::PreconditionViolated, "weight direction lies outside the stratum cone");

  std::vector<std::pair<QuadExt, QuadExt>> level_slope;
  std::vector<std::pair<int, QuadExt>> candidates;  // (index, scale)
  for (int j : strata.destabilized) {
    QuadExt p = pairing(arc.action.weights[j], xi);
    if (qx_sign(p) >= 0) continue;
    std::optional<QuadExt> v = series_valuation(arc.coordinates[j]);
    if (!v)
      fail(ErrCode::PrecisionExhausted,
           "a destabilized coordinate vanishes to its precision; its wall cannot be placed");
    QuadExt slope = qx_neg(p);
    level_slope.emplace_back(*v, slope);
    candidates.emplace_back(j, qx_div(*v, slope));
  }
  if (candidates.empty())
    fail(ErrCode::NoDestabilizingDirection,
         "no destabilized coordinate pairs negatively with the direction");

  CriticalScale out;
  out.walls = envelope_scales(level_slope);
  out.scale = out.walls.back();
  for (const auto& [j, scale] : candidates)
    if (qx_eq(scale, out.scale)) out.exit_set.push_back(j);
  return out;
}

Modification elementary_modification(const ArcFamily& arc, const XiVec& xi, const QuadExt& c,
                                     const RingDesc* ring) {
  check_arc_shape(arc);
  check_xi_rank(arc, xi);
  if (qx_sign(c) < 0) fail(ErrCode::PreconditionViolated, "the scale must be nonnegative");

  Modification out;
  QuadExt denominator_pairing(1);
  bool found_denominator = false;
  for (size_t j = 0; j < arc.coordinates.size(); ++j) {
    QuadExt p = pairing(arc.action.weights[j], xi);
    NovikovSeries shifted = series_shift(arc.coordinates[j], qx_mul(c, p));
    std::optional<QuadExt> v = series_valuation(shifted);
    if (v && qx_sign(*v) < 0)
      fail(ErrCode::LimitDoesNotExist,
           "coordinate " + std::to_string(j + 1) + " has negative valuation at this scale");
    if (!v && qx_sign(shifted.precision) <= 0)
      fail(ErrCode::PrecisionExhausted,
           "coordinate " + std::to_string(j + 1) + " is unknown at and below exponent zero");
    if (!found_denominator && qx_sign(p) < 0 && v && qx_sign(*v) == 0) {
      denominator_pairing = qx_neg(p);
      found_denominator = true;
    }
    out.limit_point.push_back(series_coeff_at(shifted, QuadExt(0)));
    out.coordinates.push_back(std::move(shifted));
  }

  RingDesc base = ring ? merge_pairings(*ring, arc, xi) : initial_ring(arc, xi);
  out.base_ring = extend_ring(base, QuadExt(1), denominator_pairing);
  return out;
}

std::vector<Rat> limit_along(const std::vector<Rat>& point, const TorusAction& action,
                             const XiVec& xi, FlowDirection) {
  if (point.size() != action.weights.size())
    fail(ErrCode::ShapeMismatch, "point length differs from the action's variable count");
  if (static_cast<int>(xi.size()) != action.rank)
    fail(ErrCode::RankMismatch, "weight direction rank differs from the action rank");
  std::vector<Rat> out;
  for (size_t j = 0; j < point.size(); ++j)
    out.push_back(qx_sign(pairing(action.weights[j], xi)) == 0 ? point[j] : Rat(0));
  return out;
}

ReductionStep semistable_reduce(const ArcFamily& arc, const StrataSpec& strata, const XiVec& xi,
                                const RingDesc* ring) {
  CriticalScale cs = critical_scale(arc, strata, xi);
  Modification mod = elementary_modification(arc, xi, cs.scale, ring);

  bool exits = false;
  for (int j : cs.exit_set) exits = exits || mod.limit_point[j] != 0;
  if (!exits)
    fail(ErrCode::ConsistencyError, "the modified limit failed to leave the stratum");
  if (arc.ambient_ideal)
    for (const Polynomial& f : *arc.ambient_ideal) {
      if (f.nvars != static_cast<int>(arc.coordinates.size()))
        fail(ErrCode::ShapeMismatch, "ambient ideal variable count differs from the arc");
      if (eval_poly(f, mod.limit_point) != 0)
        fail(ErrCode::AmbientViolation,
             "the limit point violates the ambient ideal; the input family is inconsistent");
    }

  ReductionStep step;
  step.critical_scale = cs.scale;
  step.exit_set = cs.exit_set;
  step.new_family = std::move(mod.coordinates);
  step.limit_point = mod.limit_point;
  step.deeper_limit = limit_along(mod.limit_point, arc.action, xi);
  step.base_ring = std::move(mod.base_ring);
  step.wall_scales = cs.walls;
  for (int j : strata.destabilized)
    if (step.deeper_limit[j] != 0)
      fail(ErrCode::ConsistencyError, "the deeper limit failed to land in the stratum");
  return step;
}

ApproxCheck check_rational_approx(const ReductionStep& step, const ArcFamily& arc,
                                  const StrataSpec& strata, const LatVec& xi2) {
  if (static_cast<int>(xi2.size()) != arc.action.rank)
    fail(ErrCode::RankMismatch, "rational direction rank differs from the action rank");
  if (!cone_contains_lat(strata.cone, xi2))
    fail(ErrCode::NotInCone, "rational direction lies outside the stratum cone");
  XiVec xi2x;
  for (long long entry : xi2) xi2x.push_back(QuadExt(static_cast<long>(entry)));

  CriticalScale cs = critical_scale(arc, strata, xi2x);
  if (cs.exit_set != step.exit_set) return {false, "exit_set"};
  Modification mod = elementary_modification(arc, xi2x, cs.scale);
  if (mod.limit_point != step.limit_point) return {false, "limit"};
  return {true, ""};
}

std::vector<ReductionStep> iterate_reduction(const ArcFamily& arc, const Stratification& strat) {
  check_arc_shape(arc);
  if (strat.empty()) fail(ErrCode::EmptyInput, "the stratification lists no strata");
  for (size_t i = 0; i + 1 < strat.size(); ++i)
    if (strat[i].label >= strat[i + 1].label)
      fail(ErrCode::NonincreasingLabels, "stratification labels must increase strictly");

  bool special_in_some = false;
  for (const Stratum& st : strat) {
    switch (classify_arc(arc, st.strata)) {
      case ArcClass::SpecialInGenericOut:
        special_in_some = true;
        break;
      case ArcClass::BothIn:
        fail(ErrCode::PreconditionViolated,
             "the generic fiber lies in a stratum; nothing to reduce");
      case ArcClass::PrecisionExhausted:
        fail(ErrCode::PrecisionExhausted,
             "a stratum membership is undecidable at the stored precision");
      case ArcClass::BothOut:
        break;
    }
  }
  if (!special_in_some)
    fail(ErrCode::PreconditionViolated, "the special fiber lies in no listed stratum");

  std::vector<ReductionStep> steps;
  ArcFamily current = arc;
  RingDesc ring;
  bool have_ring = false;
  std::optional<Rat> prev_label;
  for (size_t round = 0; round <= strat.size(); ++round) {
    const Stratum* next = nullptr;
    for (const Stratum& st : strat) {
      ArcClass cls = classify_arc(current, st.strata);
      if (cls == ArcClass::PrecisionExhausted)
        fail(ErrCode::PrecisionExhausted,
             "a stratum membership is undecidable at the stored precision");
      if (cls == ArcClass::SpecialInGenericOut) {
        next = &st;
        break;
      }
    }
    if (!next) break;
    if (prev_label && *prev_label >= next->label)
      fail(ErrCode::NonincreasingLabels,
           "reduction revisited a stratum at or below the previous label");
    prev_label = next->label;
    ReductionStep step =
        semistable_reduce(current, next->strata, next->xi_choice, have_ring ? &ring : nullptr);
    ring = step.base_ring;
    have_ring = true;
    current.coordinates = step.new_family;
    steps.push_back(std::move(step));
  }
  return steps;
}

}  // namespace degen
