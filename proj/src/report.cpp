#include "degen/report.hpp"

#include <algorithm>

#include "degen/errors.hpp"
#include "degen/groebner.hpp"
#include "degen/reduction.hpp"
#include "degen/testconfig.hpp"

namespace degen {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string set_str(const std::vector<std::string>& parts) {
  if (parts.empty()) return "{ }";
  return "{ " + join(parts, ", ") + " }";
}

std::string tuple_str(const std::vector<std::string>& parts) {
  return "(" + join(parts, ", ") + ")";
}

std::string bracket_str(const std::vector<std::string>& parts) {
  return "[" + join(parts, ", ") + "]";
}

std::vector<std::string> rat_strs(const std::vector<Rat>& v) {
  std::vector<std::string> out;
  for (const Rat& x : v) out.push_back(rat_to_string(x));
  return out;
}

std::vector<std::string> qx_strs(const std::vector<QuadExt>& v) {
  std::vector<std::string> out;
  for (const QuadExt& x : v) out.push_back(qx_to_string(x));
  return out;
}

std::vector<std::string> lat_strs(const std::vector<LatVec>& v) {
  std::vector<std::string> out;
  for (const LatVec& x : v) out.push_back(lat_to_string(x));
  return out;
}

std::vector<std::string> poly_strs(const std::vector<Polynomial>& v,
                                   const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const Polynomial& f : v) out.push_back(poly_to_string(f, vars));
  return out;
}

[[noreturn]] void need(const std::string& command, const std::string& section) {
  fail(ErrCode::ConsistencyError,
       "command `" + command + "` requires section [" + section + "]");
}

TorusAction load_action(const ProblemFile& p, const std::string& command) {
  if (!p.has("action")) need(command, "action");
  TorusAction action;
  for (const std::string& piece : split_list(p.get("action", "weights"), ';'))
    action.weights.push_back(parse_latvec(piece));
  if (action.weights.empty()) fail(ErrCode::ConsistencyError, "the action lists no weights");
  action.rank = static_cast<int>(action.weights[0].size());
  for (const LatVec& w : action.weights)
    if (static_cast<int>(w.size()) != action.rank)
      fail(ErrCode::ConsistencyError, "action weights of unequal rank");
  if (p.has_key("lattice", "rank") &&
      parse_integer(p.get("lattice", "rank")) != action.rank)
    fail(ErrCode::ConsistencyError, "declared lattice rank differs from the weight rank");
  return action;
}

XiVec load_xi(const ProblemFile& p, const TorusAction& action, const std::string& command) {
  if (!p.has("xi")) need(command, "xi");
  XiVec xi = parse_xivec(p.get("xi", "xi"));
  if (static_cast<int>(xi.size()) != action.rank)
    fail(ErrCode::ConsistencyError, "weight direction rank differs from the lattice rank");
  return xi;
}

RationalCone load_cone(const ProblemFile& p, const TorusAction& action,
                       const std::string& command) {
  if (!p.has("cone")) need(command, "cone");
  std::vector<LatVec> gens;
  for (const std::string& piece : split_list(p.get("cone", "generators"), ';'))
    gens.push_back(parse_latvec(piece));
  for (const LatVec& g : gens)
    if (static_cast<int>(g.size()) != action.rank)
      fail(ErrCode::ConsistencyError, "cone generator rank differs from the lattice rank");
  return make_cone(action.rank, std::move(gens));
}

struct IdealInput {
  std::vector<std::string> vars;
  std::vector<Polynomial> gens;
};

IdealInput load_ideal(const ProblemFile& p, const std::string& command) {
  if (!p.has("ideal")) need(command, "ideal");
  IdealInput out;
  out.vars = split_list(p.get("ideal", "vars"), ',');
  for (const std::string& v : out.vars)
    if (v.empty()) fail(ErrCode::ConsistencyError, "empty variable name");
  for (const std::string& piece : split_list(p.get("ideal", "gens"), ';'))
    out.gens.push_back(parse_poly(piece, out.vars));
  return out;
}

ArcFamily load_arc(const ProblemFile& p, const TorusAction& action, const CommandFlags& flags,
                   const std::string& command) {
  if (!p.has("arc")) need(command, "arc");
  QuadExt precision(flags.precision);
  if (p.has_key("arc", "precision")) precision = qx_parse(p.get("arc", "precision"));
  ArcFamily arc;
  arc.action = action;
  for (const std::string& piece : split_list(p.get("arc", "coordinates"), ';'))
    arc.coordinates.push_back(parse_series(piece, precision));
  if (arc.coordinates.size() != action.weights.size())
    fail(ErrCode::ConsistencyError, "arc coordinate count differs from the weight count");
  if (p.has("ideal")) {
    IdealInput ideal = load_ideal(p, command);
    if (ideal.vars.size() != arc.coordinates.size())
      fail(ErrCode::ConsistencyError, "ambient ideal variable count differs from the arc");
    arc.ambient_ideal = std::move(ideal.gens);
  }
  return arc;
}

StrataSpec load_strata(const ProblemFile& p, const TorusAction& action,
                       const std::string& command) {
  StrataSpec strata = attractor_locus(action, load_cone(p, action, command));
  if (p.has_key("strata", "destabilized")) {
    std::vector<int> listed;
    for (const std::string& piece : split_list(p.get("strata", "destabilized"), ',')) {
      long long j = parse_integer(piece);
      if (j < 1 || j > static_cast<long long>(action.weights.size()))
        fail(ErrCode::ConsistencyError, "destabilized index out of range");
      listed.push_back(static_cast<int>(j - 1));
    }
    std::sort(listed.begin(), listed.end());
    listed.erase(std::unique(listed.begin(), listed.end()), listed.end());
    strata.destabilized = std::move(listed);
  }
  return strata;
}

GeneralizedTestConfig load_family(const ProblemFile& p, const IdealInput& ideal,
                                  const TorusAction& action, const std::string& command,
                                  bool* certified_line) {
  if (ideal.vars.size() != action.weights.size())
    fail(ErrCode::ConsistencyError, "one action weight per variable is required");
  if (p.has("cone")) {
    // Fixed base cone: degenerate the canonical (zero-direction) reduced basis.
    WeightOrder order{XiVec(action.rank, QuadExt(0)), action};
    *certified_line = false;
    return orbit_closure_family(buchberger(ideal.gens, order), action,
                                load_cone(p, action, command));
  }
  *certified_line = true;
  return canonical_degeneration(ideal.gens, action, load_xi(p, action, command));
}

void append_step(Report& report, const ReductionStep& step) {
  report.lines.push_back("critical_scale = " + qx_to_string(step.critical_scale));
  std::vector<std::string> exits;
  for (int j : step.exit_set) exits.push_back(std::to_string(j + 1));
  report.lines.push_back("exit_set = " + set_str(exits));
  report.lines.push_back("walls = " + bracket_str(qx_strs(step.wall_scales)));
  report.lines.push_back("limit = " + tuple_str(rat_strs(step.limit_point)));
  report.lines.push_back("deeper_limit = " + tuple_str(rat_strs(step.deeper_limit)));
  report.lines.push_back("base_monoid = " + set_str(qx_strs(graded_generators(step.base_ring))));
}

Report cmd_in_ideal(const ProblemFile& p, const CommandFlags&) {
  TorusAction action = load_action(p, "in-ideal");
  IdealInput ideal = load_ideal(p, "in-ideal");
  WeightOrder order{load_xi(p, action, "in-ideal"), action};
  Report report;
  report.lines.push_back("initial_ideal = " +
                         set_str(poly_strs(initial_ideal(ideal.gens, order), ideal.vars)));
  return report;
}

Report cmd_gcone(const ProblemFile& p, const CommandFlags&) {
  TorusAction action = load_action(p, "gcone");
  IdealInput ideal = load_ideal(p, "gcone");
  WeightOrder order{load_xi(p, action, "gcone"), action};
  std::vector<Polynomial> gb = buchberger(ideal.gens, order);
  GroebnerCone gc = groebner_cone(gb, order);
  Report report;
  report.lines.push_back("reduced_basis = " + set_str(poly_strs(gb, ideal.vars)));
  report.lines.push_back("rank = " + std::to_string(gc.cone.rank));
  report.lines.push_back("generators = " + set_str(lat_strs(gc.cone.generators)));
  return report;
}

Report cmd_family(const ProblemFile& p, const CommandFlags& flags) {
  TorusAction action = load_action(p, "family");
  IdealInput ideal = load_ideal(p, "family");
  bool certified_line = false;
  GeneralizedTestConfig config = load_family(p, ideal, action, "family", &certified_line);

  std::vector<std::string> gens;
  for (const FamilyGen& g : config.family_gens)
    gens.push_back(family_gen_to_string(g, ideal.vars));
  std::vector<Polynomial> identity = family_fiber(config, FiberPoint::Identity);
  std::vector<Polynomial> deep = family_fiber(config, FiberPoint::DeepTorusFixed);

  Report report;
  report.lines.push_back("base_cone = " + set_str(lat_strs(config.base_cone.generators)));
  report.lines.push_back("hilbert_basis = " + set_str(lat_strs(config.base_hilbert)));
  report.lines.push_back("family = " + set_str(gens));
  report.lines.push_back("identity_fiber = " + set_str(poly_strs(identity, ideal.vars)));
  report.lines.push_back("deep_fiber = " + set_str(poly_strs(deep, ideal.vars)));
  if (certified_line)
    report.lines.push_back(std::string("xi_certified = ") +
                           (config.xi_certified ? "true" : "false"));
  if (flags.degree_bound > 0) {
    WeightOrder order{XiVec(action.rank, QuadExt(0)), action};
    auto slice_str = [](const std::vector<long long>& v) {
      std::vector<std::string> out;
      for (long long x : v) out.push_back(std::to_string(x));
      return tuple_str(out);
    };
    report.lines.push_back(
        "hilbert_identity = " + slice_str(hilbert_function(identity, order, flags.degree_bound)));
    report.lines.push_back(
        "hilbert_deep = " + slice_str(hilbert_function(deep, order, flags.degree_bound)));
  }
  return report;
}

Report cmd_restrict(const ProblemFile& p, const CommandFlags& flags) {
  if (!flags.xi2)
    fail(ErrCode::ConsistencyError, "command `restrict` requires --xi2 \"(a, b)\"");
  TorusAction action = load_action(p, "restrict");
  IdealInput ideal = load_ideal(p, "restrict");
  bool unused = false;
  GeneralizedTestConfig config = load_family(p, ideal, action, "restrict", &unused);
  OneParamTestConfig restricted = rational_restriction(config, *flags.xi2);

  std::vector<std::string> gens;
  for (const OneParamGen& g : restricted.family_gens)
    gens.push_back(one_param_gen_to_string(g, ideal.vars));
  std::vector<std::string> profile;
  for (long long w : restricted.weight_profile) profile.push_back(std::to_string(w));

  Report report;
  report.lines.push_back("restricted = " + set_str(gens));
  report.lines.push_back("weight_profile = " + tuple_str(profile));
  return report;
}

Report cmd_reduce(const ProblemFile& p, const CommandFlags& flags) {
  TorusAction action = load_action(p, "reduce");
  ArcFamily arc = load_arc(p, action, flags, "reduce");
  StrataSpec strata = load_strata(p, action, "reduce");
  XiVec xi = load_xi(p, action, "reduce");
  Report report;
  append_step(report, semistable_reduce(arc, strata, xi));
  return report;
}

Report cmd_iterate(const ProblemFile& p, const CommandFlags& flags) {
  TorusAction action = load_action(p, "iterate");
  ArcFamily arc = load_arc(p, action, flags, "iterate");
  if (!p.has("stratification")) need("iterate", "stratification");
  Stratification strat;
  for (const std::string& entry : p.get_all("stratification", "stratum")) {
    std::vector<std::string> parts = split_list(entry, '|');
    if (parts.size() != 3)
      fail(ErrCode::ParseError, "stratum entries read `label | cone generators | xi`");
    Stratum st;
    st.label = parse_rational(parts[0]);
    std::vector<LatVec> gens;
    for (const std::string& piece : split_list(parts[1], ';')) gens.push_back(parse_latvec(piece));
    st.strata = attractor_locus(action, make_cone(action.rank, std::move(gens)));
    st.xi_choice = parse_xivec(parts[2]);
    strat.push_back(std::move(st));
  }

  std::vector<ReductionStep> steps = iterate_reduction(arc, strat);
  Report report;
  report.lines.push_back("steps = " + std::to_string(steps.size()));
  for (size_t i = 0; i < steps.size(); ++i) {
    report.lines.push_back("step = " + std::to_string(i + 1));
    append_step(report, steps[i]);
  }
  return report;
}

Report cmd_check_approx(const ProblemFile& p, const CommandFlags& flags) {
  if (!flags.xi2)
    fail(ErrCode::ConsistencyError, "command `check-approx` requires --xi2 \"(a, b)\"");
  TorusAction action = load_action(p, "check-approx");
  ArcFamily arc = load_arc(p, action, flags, "check-approx");
  StrataSpec strata = load_strata(p, action, "check-approx");
  XiVec xi = load_xi(p, action, "check-approx");
  ReductionStep step = semistable_reduce(arc, strata, xi);
  ApproxCheck check = check_rational_approx(step, arc, strata, *flags.xi2);
  Report report;
  report.lines.push_back("result = " +
                         (check.match ? std::string("Match")
                                      : "Mismatch(" + check.witness + ")"));
  return report;
}

Report cmd_novikov_extend(const ProblemFile& p, const CommandFlags&) {
  TorusAction action = load_action(p, "novikov-extend");
  XiVec xi = load_xi(p, action, "novikov-extend");
  if (!p.has_key("xi", "m")) fail(ErrCode::ConsistencyError, "command `novikov-extend` requires `m` in [xi]");
  LatVec m = parse_latvec(p.get("xi", "m"));
  if (static_cast<int>(m.size()) != action.rank)
    fail(ErrCode::ConsistencyError, "character rank differs from the lattice rank");
  QuadExt pi(1);
  if (p.has_key("xi", "pi")) pi = qx_parse(p.get("xi", "pi"));

  long d = 0;
  for (const QuadExt& x : xi)
    if (x.d != 0) d = x.d;
  std::vector<QuadExt> pairing_gens;
  for (const LatVec& w : action.weights) {
    QuadExt pv = pairing(w, xi);
    if (qx_sign(pv) < 0) pv = qx_neg(pv);
    if (qx_sign(pv) > 0) pairing_gens.push_back(pv);
  }
  std::sort(pairing_gens.begin(), pairing_gens.end(), qx_lt);
  pairing_gens.erase(std::unique(pairing_gens.begin(), pairing_gens.end(), qx_eq),
                     pairing_gens.end());
  RingDesc ring = make_ring(d, {QuadExt(1)}, std::move(pairing_gens));
  RingDesc extended = extend_ring(ring, pi, pairing(m, xi));

  Report report;
  report.lines.push_back("b = " + qx_to_string(qx_div(pi, pairing(m, xi))));
  report.lines.push_back("monoid = " + set_str(qx_strs(graded_generators(extended))));
  report.lines.push_back("relation = (" + qx_to_string(extended.relations.back().first) + ", " +
                         qx_to_string(extended.relations.back().second) + ")");
  return report;
}

}  // namespace

Report run_command(const std::string& command, const ProblemFile& problem,
                   const CommandFlags& flags) {
  if (command == "in-ideal") return cmd_in_ideal(problem, flags);
  if (command == "gcone") return cmd_gcone(problem, flags);
  if (command == "family") return cmd_family(problem, flags);
  if (command == "restrict") return cmd_restrict(problem, flags);
  if (command == "reduce") return cmd_reduce(problem, flags);
  if (command == "iterate") return cmd_iterate(problem, flags);
  if (command == "check-approx") return cmd_check_approx(problem, flags);
  if (command == "novikov-extend") return cmd_novikov_extend(problem, flags);
  fail(ErrCode::ParseError, "unknown command `" + command + "`");
}

std::string render_report(const Report& report) {
  if (report.lines.empty()) return "ok\n";
  std::string out;
  for (const std::string& line : report.lines) out += line + "\n";
  return out;
}

void emit_report(const Report& report, std::ostream& sink) {
  sink << render_report(report);
  if (!sink) fail(ErrCode::IoError, "failed to write the report");
}

}  // namespace degen
