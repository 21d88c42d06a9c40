#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "degen/reduction.hpp"

using namespace degen;

namespace {

QuadExt sqrt2() { return QuadExt(Rat(0), Rat(1), 2); }
QuadExt qx(long a, long b) { return QuadExt(Rat(a), Rat(b), 2); }

TorusAction running_action() { return TorusAction{2, {{-1, 0}, {0, -1}, {1, 1}}}; }
RationalCone orthant() { return make_cone(2, {{1, 0}, {0, 1}}); }

// t^a with rational exponent, plus helpers for explicit term lists.
NovikovSeries tpow(long a, long prec = 8) {
  return make_series({{QuadExt(a), Rat(1)}}, QuadExt(prec));
}

NovikovSeries ser(std::vector<std::pair<QuadExt, Rat>> terms, QuadExt prec) {
  return make_series(std::move(terms), std::move(prec));
}

ArcFamily running_arc() {
  ArcFamily arc;
  arc.coordinates = {tpow(2), tpow(3),
                     ser({{QuadExt(0), Rat(1)}, {QuadExt(1), Rat(1)}}, QuadExt(8))};
  arc.action = running_action();
  return arc;
}

StrataSpec running_strata() { return attractor_locus(running_action(), orthant()); }

bool series_eq(const NovikovSeries& a, const NovikovSeries& b) {
  return a.terms == b.terms && a.precision == b.precision;
}

NovikovSeries scale_series(const NovikovSeries& a, const Rat& c) {
  std::vector<std::pair<QuadExt, Rat>> terms;
  for (const auto& [e, coeff] : a.terms) terms.emplace_back(e, coeff * c);
  return make_series(std::move(terms), a.precision);
}

std::vector<Rat> rats(std::vector<long> v) {
  std::vector<Rat> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("attractor loci read off the negative pairings") {
  CHECK(running_strata().destabilized == std::vector<int>{0, 1});
  CHECK(attractor_locus(TorusAction{2, {{1, 0}, {0, 1}, {1, 1}}}, orthant()).destabilized ==
        std::vector<int>{});
  CHECK(attractor_locus(TorusAction{2, {{1, -1}}}, make_cone(2, {{1, 1}, {0, 1}})).destabilized ==
        std::vector<int>{0});
  try {
    attractor_locus(TorusAction{3, {{1, 0, 0}}}, orthant());
    FAIL("expected RankMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::RankMismatch);
  }
}

TEST_CASE("arc classification against a stratum") {
  StrataSpec strata = running_strata();
  CHECK(classify_arc(running_arc(), strata) == ArcClass::SpecialInGenericOut);

  ArcFamily out;
  out.coordinates = {ser({{QuadExt(0), Rat(1)}}, QuadExt(8)), tpow(1),
                     ser({{QuadExt(0), Rat(1)}}, QuadExt(8))};
  out.action = running_action();
  StrataSpec first_only{orthant(), {0}};
  CHECK(classify_arc(out, first_only) == ArcClass::BothOut);

  ArcFamily truncated;
  truncated.coordinates = {ser({}, QuadExt(8)), tpow(1), ser({{QuadExt(0), Rat(1)}}, QuadExt(8))};
  truncated.action = running_action();
  CHECK(classify_arc(truncated, first_only) == ArcClass::PrecisionExhausted);

  StrataSpec empty{orthant(), {}};
  CHECK(classify_arc(running_arc(), empty) == ArcClass::BothIn);
}

TEST_CASE("critical scale of the running arc") {
  XiVec xi = {QuadExt(1), sqrt2()};
  CriticalScale cs = critical_scale(running_arc(), running_strata(), xi);
  CHECK(qx_eq(cs.scale, QuadExt(2)));
  CHECK(cs.exit_set == std::vector<int>{0});
  REQUIRE(cs.walls.size() == 2);
  CHECK(qx_eq(cs.walls[0], QuadExt(Rat(0), make_rat(3, 2), 2)));  // 3/sqrt(2)
  CHECK(qx_eq(cs.walls[1], QuadExt(2)));

  // Single destabilized coordinate with pairing -1: the scale is the valuation.
  ArcFamily single;
  single.coordinates = {tpow(5)};
  single.action = TorusAction{2, {{0, -1}}};
  CriticalScale one = critical_scale(single, attractor_locus(single.action, orthant()),
                                     {QuadExt(1), QuadExt(1)});
  CHECK(qx_eq(one.scale, QuadExt(5)));
  CHECK(one.exit_set == std::vector<int>{0});
  CHECK(one.walls.size() == 1);

  // Tie: both coordinates cross at the same scale and the walls merge.
  ArcFamily tie;
  tie.coordinates = {tpow(2), tpow(4)};
  tie.action = TorusAction{2, {{-1, 0}, {0, -2}}};
  CriticalScale both = critical_scale(tie, attractor_locus(tie.action, orthant()),
                                      {QuadExt(1), QuadExt(1)});
  CHECK(qx_eq(both.scale, QuadExt(2)));
  CHECK(both.exit_set == std::vector<int>{0, 1});
  CHECK(both.walls.size() == 1);
}

TEST_CASE("critical scale preconditions and degenerate directions") {
  XiVec xi = {QuadExt(1), sqrt2()};
  ArcFamily out;
  out.coordinates = {ser({{QuadExt(0), Rat(1)}}, QuadExt(8)), tpow(1), tpow(1)};
  out.action = running_action();
  try {
    critical_scale(out, running_strata(), xi);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::PreconditionViolated);
  }
  try {
    critical_scale(running_arc(), running_strata(), {QuadExt(-1), QuadExt(1)});
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::PreconditionViolated);
  }

  // Destabilized via one cone generator but orthogonal to the chosen xi.
  ArcFamily flat;
  flat.coordinates = {tpow(2)};
  flat.action = TorusAction{2, {{1, -1}}};
  StrataSpec wedge = attractor_locus(flat.action, make_cone(2, {{1, 1}, {0, 1}}));
  REQUIRE(wedge.destabilized == std::vector<int>{0});
  try {
    critical_scale(flat, wedge, {QuadExt(1), QuadExt(1)});
    FAIL("expected NoDestabilizingDirection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::NoDestabilizingDirection);
  }

  // A destabilized coordinate that vanishes to precision has no known wall.
  ArcFamily fog;
  fog.coordinates = {ser({}, QuadExt(8)), tpow(3), tpow(1)};
  fog.action = running_action();
  CHECK(classify_arc(fog, running_strata()) == ArcClass::SpecialInGenericOut);
  try {
    critical_scale(fog, running_strata(), xi);
    FAIL("expected PrecisionExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::PrecisionExhausted);
  }
}

TEST_CASE("elementary modification rescales exponents exactly") {
  XiVec xi = {QuadExt(1), sqrt2()};
  Modification mod = elementary_modification(running_arc(), xi, QuadExt(2));
  CHECK(series_eq(mod.coordinates[0], ser({{QuadExt(0), Rat(1)}}, QuadExt(6))));
  CHECK(series_eq(mod.coordinates[1], ser({{qx(3, -2), Rat(1)}}, qx(8, -2))));
  CHECK(series_eq(mod.coordinates[2],
                  ser({{qx(2, 2), Rat(1)}, {qx(3, 2), Rat(1)}}, qx(10, 2))));
  CHECK(mod.limit_point == rats({1, 0, 0}));
  CHECK(mod.base_ring.monoid.generators == std::vector<QuadExt>{QuadExt(1), sqrt2()});
  REQUIRE(mod.base_ring.relations.size() == 1);
  CHECK(qx_eq(mod.base_ring.relations[0].first, QuadExt(1)));
  CHECK(qx_eq(mod.base_ring.relations[0].second, QuadExt(1)));

  // Past the critical scale the second coordinate's valuation turns negative.
  try {
    elementary_modification(running_arc(), xi, QuadExt(3));
    FAIL("expected LimitDoesNotExist");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::LimitDoesNotExist);
  }

  // Scale zero is the identity and the limit collects the constant terms.
  Modification id = elementary_modification(running_arc(), xi, QuadExt(0));
  for (int j = 0; j < 3; ++j) CHECK(series_eq(id.coordinates[j], running_arc().coordinates[j]));
  CHECK(id.limit_point == rats({0, 0, 1}));

  try {
    elementary_modification(running_arc(), xi, QuadExt(-1));
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::PreconditionViolated);
  }
}

TEST_CASE("limits along the fixed-point direction") {
  XiVec xi = {QuadExt(1), sqrt2()};
  TorusAction action = running_action();
  CHECK(limit_along(rats({1, 0, 0}), action, xi) == rats({0, 0, 0}));
  CHECK(limit_along(rats({0, 0, 0}), action, xi) == rats({0, 0, 0}));
  CHECK(limit_along(rats({0, 0, 1}), action, xi) == rats({0, 0, 0}));

  // A weight orthogonal to xi survives the projection.
  TorusAction mixed{2, {{1, -1}, {1, 0}}};
  CHECK(limit_along(rats({5, 7}), mixed, {QuadExt(1), QuadExt(1)}) == rats({5, 0}));
}

TEST_CASE("one semistable reduction step on the running arc") {
  XiVec xi = {QuadExt(1), sqrt2()};
  ReductionStep step = semistable_reduce(running_arc(), running_strata(), xi);
  CHECK(qx_eq(step.critical_scale, QuadExt(2)));
  CHECK(step.exit_set == std::vector<int>{0});
  CHECK(step.limit_point == rats({1, 0, 0}));
  CHECK(step.deeper_limit == rats({0, 0, 0}));
  REQUIRE(step.wall_scales.size() == 2);
  CHECK(qx_eq(step.wall_scales[0], QuadExt(Rat(0), make_rat(3, 2), 2)));
  CHECK(qx_eq(step.wall_scales[1], QuadExt(2)));
  CHECK(step.base_ring.monoid.generators == std::vector<QuadExt>{QuadExt(1), sqrt2()});

  // Exit coordinates sit at valuation exactly zero, the rest at positive ones.
  for (size_t j = 0; j < step.new_family.size(); ++j) {
    std::optional<QuadExt> v = series_valuation(step.new_family[j]);
    REQUIRE(v.has_value());
    bool exits = std::find(step.exit_set.begin(), step.exit_set.end(), static_cast<int>(j)) !=
                 step.exit_set.end();
    CHECK(qx_sign(*v) == (exits ? 0 : 1));
  }

  // Symmetric tie: both coordinates exit with their leading coefficients.
  ArcFamily pair;
  pair.coordinates = {scale_series(tpow(3), Rat(2)), scale_series(tpow(3), Rat(5))};
  pair.action = TorusAction{2, {{-1, 0}, {0, -1}}};
  ReductionStep tie = semistable_reduce(pair, attractor_locus(pair.action, orthant()),
                                        {QuadExt(1), QuadExt(1)});
  CHECK(qx_eq(tie.critical_scale, QuadExt(3)));
  CHECK(tie.exit_set == std::vector<int>{0, 1});
  CHECK(tie.limit_point == rats({2, 5}));

  // An arc already outside the stratum cannot be reduced.
  ArcFamily out;
  out.coordinates = {ser({{QuadExt(0), Rat(1)}}, QuadExt(8)), tpow(1), tpow(1)};
  out.action = running_action();
  try {
    semistable_reduce(out, running_strata(), xi);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::PreconditionViolated);
  }
}

TEST_CASE("torus rescaling leaves the scale alone and rescales the limit") {
  XiVec xi = {QuadExt(1), sqrt2()};
  ReductionStep base = semistable_reduce(running_arc(), running_strata(), xi);
  std::vector<Rat> lambda = {make_rat(3, 2), Rat(-4), Rat(7)};
  ArcFamily scaled = running_arc();
  for (int j = 0; j < 3; ++j)
    scaled.coordinates[j] = scale_series(scaled.coordinates[j], lambda[j]);
  ReductionStep moved = semistable_reduce(scaled, running_strata(), xi);
  CHECK(qx_eq(moved.critical_scale, base.critical_scale));
  CHECK(moved.exit_set == base.exit_set);
  for (int j = 0; j < 3; ++j) CHECK(moved.limit_point[j] == lambda[j] * base.limit_point[j]);
}

TEST_CASE("ambient ideals are checked at the limit point") {
  // x^2 z = y is torus-homogeneous for weights (-1,0), (0,-1), (2,-1).
  TorusAction action{2, {{-1, 0}, {0, -1}, {2, -1}}};
  ArcFamily arc;
  arc.coordinates = {tpow(1), tpow(3), tpow(1)};
  arc.action = action;
  std::vector<std::string> names = {"x", "y", "z"};
  arc.ambient_ideal = {parse_poly("x^2*z - y", names)};
  StrataSpec strata = attractor_locus(action, orthant());
  REQUIRE(strata.destabilized == std::vector<int>{0, 1, 2});

  XiVec xi = {QuadExt(1), sqrt2()};
  ReductionStep step = semistable_reduce(arc, strata, xi);
  CHECK(qx_eq(step.critical_scale, QuadExt(1)));
  CHECK(step.exit_set == std::vector<int>{0});
  CHECK(step.limit_point == rats({1, 0, 0}));

  // An inconsistent ambient ideal is detected at the limit.
  arc.ambient_ideal = {parse_poly("x - y", names)};
  try {
    semistable_reduce(arc, strata, xi);
    FAIL("expected AmbientViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::AmbientViolation);
  }
}

TEST_CASE("rational directions replay the step inside the safety cone") {
  XiVec xi = {QuadExt(1), sqrt2()};
  ArcFamily arc = running_arc();
  StrataSpec strata = running_strata();
  ReductionStep step = semistable_reduce(arc, strata, xi);

  CHECK(check_rational_approx(step, arc, strata, {1, 1}) == ApproxCheck{true, ""});
  CHECK(check_rational_approx(step, arc, strata, {1, 2}) == ApproxCheck{false, "exit_set"});
  // (2, 3) stands in for the boundary direction (1, 3/2): the walls tie.
  CHECK(check_rational_approx(step, arc, strata, {2, 3}) == ApproxCheck{false, "exit_set"});
  try {
    check_rational_approx(step, arc, strata, {1, -1});
    FAIL("expected NotInCone");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::NotInCone);
  }

  // Same exit set but a different limit: the witness names the limit.
  ArcFamily drift;
  drift.coordinates = {tpow(2), ser({{QuadExt(0), Rat(1)}, {QuadExt(1), Rat(1)}}, QuadExt(8))};
  drift.action = TorusAction{2, {{-1, 0}, {1, -1}}};
  StrataSpec wedge = attractor_locus(drift.action, make_cone(2, {{1, 1}, {1, 0}}));
  REQUIRE(wedge.destabilized == std::vector<int>{0});
  ReductionStep diag = semistable_reduce(drift, wedge, {QuadExt(1), QuadExt(1)});
  CHECK(diag.limit_point == rats({1, 1}));
  CHECK(check_rational_approx(diag, drift, wedge, {2, 1}) == ApproxCheck{false, "limit"});
}

TEST_CASE("iterated reduction walks up the stratification") {
  // Deeper stratum first (lower label), shallower second.
  StrataSpec deep = running_strata();  // S = {0, 1}
  StrataSpec shallow = attractor_locus(running_action(), make_cone(2, {{-1, 1}}));
  REQUIRE(shallow.destabilized == std::vector<int>{1});

  Stratification strat = {{make_rat(1, 4), deep, {QuadExt(1), sqrt2()}},
                          {make_rat(1, 2), shallow, {QuadExt(-1), QuadExt(1)}}};
  std::vector<ReductionStep> steps = iterate_reduction(running_arc(), strat);
  REQUIRE(steps.size() == 2);
  CHECK(qx_eq(steps[0].critical_scale, QuadExt(2)));
  CHECK(steps[0].exit_set == std::vector<int>{0});
  CHECK(steps[0].limit_point == rats({1, 0, 0}));
  CHECK(qx_eq(steps[1].critical_scale, qx(3, -2)));  // 3 - 2*sqrt(2)
  CHECK(steps[1].exit_set == std::vector<int>{1});
  CHECK(steps[1].limit_point == rats({0, 1, 0}));
  CHECK(steps[1].base_ring.relations.size() == 2);
  CHECK(steps[1].base_ring.monoid.generators == std::vector<QuadExt>{QuadExt(1), sqrt2()});

  // The final family sits outside both strata.
  ArcFamily last;
  last.coordinates = steps[1].new_family;
  last.action = running_action();
  CHECK(classify_arc(last, deep) == ArcClass::BothOut);
  CHECK(classify_arc(last, shallow) == ArcClass::BothOut);

  // A single stratum reproduces the lone semistable step.
  std::vector<ReductionStep> lone =
      iterate_reduction(running_arc(), {{make_rat(1, 4), deep, {QuadExt(1), sqrt2()}}});
  REQUIRE(lone.size() == 1);
  CHECK(qx_eq(lone[0].critical_scale, QuadExt(2)));
  CHECK(lone[0].limit_point == rats({1, 0, 0}));

  // Labels out of order are rejected up front.
  Stratification bad = {{make_rat(1, 2), deep, {QuadExt(1), sqrt2()}},
                        {make_rat(1, 4), shallow, {QuadExt(-1), QuadExt(1)}}};
  try {
    iterate_reduction(running_arc(), bad);
    FAIL("expected NonincreasingLabels");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::NonincreasingLabels);
  }

  // An empty destabilized set means the generic fiber never leaves.
  Stratification both_in = {{make_rat(1, 4), StrataSpec{orthant(), {}}, {QuadExt(1), sqrt2()}}};
  try {
    iterate_reduction(running_arc(), both_in);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::PreconditionViolated);
  }

  // An arc outside every stratum has nothing to reduce.
  ArcFamily out;
  out.coordinates = {ser({{QuadExt(0), Rat(1)}}, QuadExt(8)),
                     ser({{QuadExt(0), Rat(1)}, {QuadExt(1), Rat(1)}}, QuadExt(8)), tpow(1)};
  out.action = running_action();
  try {
    iterate_reduction(out, strat);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::PreconditionViolated);
  }
}

TEST_CASE("random arcs satisfy the reduction invariants") {
  std::mt19937 rng(20260825);
  std::uniform_int_distribution<int> val(1, 5);
  std::uniform_int_distribution<int> coef(1, 9);
  std::uniform_int_distribution<int> sign(0, 1);
  XiVec xi = {QuadExt(1), sqrt2()};
  TorusAction action = running_action();
  StrataSpec strata = running_strata();

  for (int trial = 0; trial < 30; ++trial) {
    ArcFamily arc;
    arc.action = action;
    for (int j = 0; j < 3; ++j) {
      std::vector<std::pair<QuadExt, Rat>> terms;
      int base = (j < 2) ? val(rng) : 0;  // destabilized coordinates vanish at t = 0
      int nterms = 1 + sign(rng);
      for (int k = 0; k < nterms; ++k)
        terms.push_back({QuadExt(static_cast<long>(base + k)),
                         Rat((sign(rng) ? 1 : -1) * coef(rng))});
      arc.coordinates.push_back(make_series(std::move(terms), QuadExt(8)));
    }
    REQUIRE(classify_arc(arc, strata) == ArcClass::SpecialInGenericOut);
    ReductionStep step = semistable_reduce(arc, strata, xi);

    CHECK(qx_sign(step.critical_scale) > 0);
    CHECK(qx_eq(step.wall_scales.back(), step.critical_scale));
    for (size_t i = 0; i + 1 < step.wall_scales.size(); ++i)
      CHECK(qx_compare(step.wall_scales[i], step.wall_scales[i + 1]) > 0);
    for (int j : step.exit_set) CHECK(step.limit_point[j] != 0);
    for (int j : strata.destabilized) CHECK(step.deeper_limit[j] == 0);
    for (size_t j = 0; j < 3; ++j) {
      std::optional<QuadExt> v = series_valuation(step.new_family[j]);
      REQUIRE(v.has_value());
      CHECK(qx_sign(*v) >= 0);
    }
    for (int j : step.exit_set)
      CHECK(qx_sign(*series_valuation(step.new_family[j])) == 0);
  }
}
