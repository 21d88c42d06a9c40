#include "degen/testconfig.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace degen {

namespace {

// Membership in the dual of tau is a finite set of sign conditions against
// tau's canonical generators.
bool in_dual(const RationalCone& tau, const LatVec& v) {
  for (const LatVec& g : tau.generators)
    if (dot_ll(g, v) < 0) return false;
  return true;
}

// Orthogonal to the whole of tau: the coordinates fixed by the limit.
bool perp_to(const RationalCone& tau, const LatVec& v) {
  for (const LatVec& g : tau.generators)
    if (dot_ll(g, v) != 0) return false;
  return true;
}

using DecompMemo = std::map<LatVec, std::optional<std::vector<int>>>;

// Canonical decomposition of target over the Hilbert basis: fewest factors,
// ties resolved toward earlier basis elements.  Exists whenever target lies
// in the dual cone, because the Hilbert basis generates its semigroup.
const std::optional<std::vector<int>>& try_decompose(const LatVec& target,
                                                     const std::vector<LatVec>& basis,
                                                     const RationalCone& tau, DecompMemo& memo) {
  auto it = memo.find(target);
  if (it != memo.end()) return it->second;
  std::optional<std::vector<int>> best;
  if (lat_is_zero(target)) {
    best = std::vector<int>(basis.size(), 0);
  } else {
    for (size_t i = 0; i < basis.size(); ++i) {
      LatVec rest = lat_add(target, lat_scale(basis[i], -1));
      if (!in_dual(tau, rest)) continue;
      const auto& sub = try_decompose(rest, basis, tau, memo);
      if (!sub) continue;
      std::vector<int> cand = *sub;
      cand[i] += 1;
      int total = 0, best_total = 0;
      for (int k : cand) total += k;
      if (best)
        for (int k : *best) best_total += k;
      if (!best || total < best_total || (total == best_total && cand < *best))
        best = std::move(cand);
    }
  }
  return memo.emplace(target, std::move(best)).first->second;
}

std::vector<int> decompose_over_hilbert(const LatVec& target, const std::vector<LatVec>& basis,
                                        const RationalCone& tau, DecompMemo& memo) {
  const auto& result = try_decompose(target, basis, tau, memo);
  if (!result) fail(ErrCode::ConeTooLarge, "exponent admits no Hilbert-basis decomposition");
  return *result;
}

}  // namespace

GeneralizedTestConfig orbit_closure_family(const std::vector<Polynomial>& ideal,
                                           const TorusAction& action, const RationalCone& tau) {
  if (ideal.empty()) fail(ErrCode::EmptyInput, "empty generator list");
  if (tau.rank != action.rank)
    fail(ErrCode::RankMismatch, "base cone rank differs from action rank");
  for (const LatVec& w : action.weights)
    if (static_cast<int>(w.size()) != action.rank)
      fail(ErrCode::RankMismatch, "torus weight rank differs from action rank");
  int nvars = ideal[0].nvars;
  for (const Polynomial& g : ideal)
    if (g.nvars != nvars) fail(ErrCode::ShapeMismatch, "mixed variable counts");
  if (static_cast<int>(action.weights.size()) != nvars)
    fail(ErrCode::ShapeMismatch, "one torus weight per variable required");

  RationalCone dual = dual_cone(tau);
  if (!cone_is_pointed(dual))
    fail(ErrCode::NotPointed, "base cone must be full-dimensional so its dual is pointed");

  GeneralizedTestConfig config;
  config.base_cone = tau;
  config.base_hilbert = hilbert_basis(dual);
  config.action = action;

  DecompMemo memo;
  for (const Polynomial& g : ideal) {
    if (g.is_zero()) continue;

    std::vector<LatVec> chi;
    chi.reserve(g.terms.size());
    for (const auto& [e, c] : g.terms) {
      LatVec m(action.rank, 0);
      for (int j = 0; j < nvars; ++j)
        if (e[j] != 0) m = lat_add(m, lat_scale(action.weights[j], e[j]));
      chi.push_back(std::move(m));
    }

    // The factored-out monomial: the unique term whose differences to all
    // others stay in the dual cone (ties only between equal chi-exponents).
    size_t pivot = g.terms.size();
    for (size_t p = 0; p < g.terms.size() && pivot == g.terms.size(); ++p) {
      bool ok = true;
      for (size_t t = 0; t < g.terms.size() && ok; ++t)
        ok = in_dual(tau, lat_add(chi[t], lat_scale(chi[p], -1)));
      if (ok) pivot = p;
    }
    if (pivot == g.terms.size())
      fail(ErrCode::ConeTooLarge,
           "no term of the generator stays minimal over the base cone; shrink it");

    FamilyGen fam;
    fam.nvars = nvars;
    for (size_t t = 0; t < g.terms.size(); ++t) {
      LatVec delta = lat_add(chi[t], lat_scale(chi[pivot], -1));
      fam.terms.push_back(FamilyTerm{
          g.terms[t].first, g.terms[t].second,
          decompose_over_hilbert(delta, config.base_hilbert, tau, memo)});
    }
    config.family_gens.push_back(std::move(fam));
  }
  return config;
}

std::vector<Polynomial> family_fiber(const GeneralizedTestConfig& config, FiberPoint point) {
  std::vector<bool> survives(config.base_hilbert.size(), true);
  if (point == FiberPoint::DeepTorusFixed)
    for (size_t i = 0; i < config.base_hilbert.size(); ++i)
      survives[i] = perp_to(config.base_cone, config.base_hilbert[i]);

  std::vector<Polynomial> out;
  for (const FamilyGen& gen : config.family_gens) {
    std::vector<std::pair<Expo, Rat>> terms;
    for (const FamilyTerm& term : gen.terms) {
      bool keep = true;
      for (size_t i = 0; i < term.u_expo.size(); ++i)
        if (term.u_expo[i] > 0 && !survives[i]) keep = false;
      if (keep) terms.emplace_back(term.expo, term.coeff);
    }
    out.push_back(make_poly(gen.nvars, std::move(terms)));
  }
  return out;
}

OneParamTestConfig rational_restriction(const GeneralizedTestConfig& config, const LatVec& xi2) {
  if (static_cast<int>(xi2.size()) != config.base_cone.rank)
    fail(ErrCode::RankMismatch, "restriction direction rank differs from base cone rank");
  if (lat_is_zero(xi2) || primitivized(xi2) != xi2)
    fail(ErrCode::PreconditionViolated, "restriction direction must be a primitive lattice vector");
  if (!cone_contains_lat(config.base_cone, xi2))
    fail(ErrCode::NotInCone, "restriction direction lies outside the base cone");

  OneParamTestConfig out;
  for (const LatVec& w : config.action.weights) out.weight_profile.push_back(dot_ll(w, xi2));
  for (const FamilyGen& gen : config.family_gens) {
    OneParamGen g;
    g.nvars = gen.nvars;
    for (const FamilyTerm& term : gen.terms) {
      long long p = 0;
      for (size_t i = 0; i < term.u_expo.size(); ++i)
        if (term.u_expo[i] != 0)
          p += static_cast<long long>(term.u_expo[i]) * dot_ll(config.base_hilbert[i], xi2);
      g.terms.push_back(OneParamTerm{term.expo, term.coeff, p});
    }
    out.family_gens.push_back(std::move(g));
  }
  return out;
}

GeneralizedTestConfig canonical_degeneration(const std::vector<Polynomial>& ideal,
                                             const TorusAction& action, const XiVec& xi,
                                             long budget) {
  WeightOrder order{xi, action};
  std::vector<Polynomial> gb = buchberger(ideal, order, budget);
  if (gb.empty()) fail(ErrCode::EmptyInput, "the zero ideal has no degeneration");
  GroebnerCone tau = groebner_cone(gb, order, budget);
  GeneralizedTestConfig config = orbit_closure_family(gb, action, tau.cone);
  config.xi_certified = certify_irrational(xi);
  return config;
}

namespace {

// Shared sign-aware term joiner for the two renderers.
std::string join_terms(const std::vector<std::pair<Rat, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [c, mono] : terms) {
    Rat mag = c < 0 ? Rat(-c) : c;
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (mono.empty()) {
      s += rat_to_string(mag);
    } else if (mag == 1) {
      s += mono;
    } else {
      s += rat_to_string(mag) + "*" + mono;
    }
  }
  return s;
}

std::string var_factors(const Expo& e, const std::vector<std::string>& vars) {
  std::string mono;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!mono.empty()) mono += "*";
    mono += vars[i];
    if (e[i] > 1) mono += "^" + std::to_string(e[i]);
  }
  return mono;
}

}  // namespace

std::string family_gen_to_string(const FamilyGen& gen, const std::vector<std::string>& vars) {
  if (static_cast<int>(vars.size()) != gen.nvars)
    fail(ErrCode::ShapeMismatch, "variable name count differs");
  std::vector<std::pair<Rat, std::string>> parts;
  for (const FamilyTerm& term : gen.terms) {
    std::string mono;
    for (size_t i = 0; i < term.u_expo.size(); ++i) {
      if (term.u_expo[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "u" + std::to_string(i + 1);
      if (term.u_expo[i] > 1) mono += "^" + std::to_string(term.u_expo[i]);
    }
    std::string zs = var_factors(term.expo, vars);
    if (!zs.empty()) {
      if (!mono.empty()) mono += "*";
      mono += zs;
    }
    parts.emplace_back(term.coeff, std::move(mono));
  }
  return join_terms(parts);
}

std::string one_param_gen_to_string(const OneParamGen& gen, const std::vector<std::string>& vars) {
  if (static_cast<int>(vars.size()) != gen.nvars)
    fail(ErrCode::ShapeMismatch, "variable name count differs");
  std::vector<std::pair<Rat, std::string>> parts;
  for (const OneParamTerm& term : gen.terms) {
    std::string mono;
    if (term.t_power > 0) {
      mono += "t";
      if (term.t_power > 1) mono += "^" + std::to_string(term.t_power);
    }
    std::string zs = var_factors(term.expo, vars);
    if (!zs.empty()) {
      if (!mono.empty()) mono += "*";
      mono += zs;
    }
    parts.emplace_back(term.coeff, std::move(mono));
  }
  return join_terms(parts);
}

}  // namespace degen
