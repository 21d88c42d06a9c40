#ifndef DEGEN_TESTCONFIG_HPP
#define DEGEN_TESTCONFIG_HPP

#include <string>
#include <vector>

#include "degen/groebner.hpp"

namespace degen {

/// One term c * u^k * z^e of a family generator: e is an exponent vector in
/// the original variables, k a multi-exponent over the base Hilbert basis.
struct FamilyTerm {
  Expo expo;
  Rat coeff;
  std::vector<int> u_expo;

  bool operator==(const FamilyTerm&) const = default;
};

/// Polynomial in the original variables whose coefficients are monomials in
/// the toric base coordinates u_1..u_k.
struct FamilyGen {
  int nvars = 0;
  std::vector<FamilyTerm> terms;

  bool operator==(const FamilyGen&) const = default;
};

/// Flat family over an affine toric base presenting the orbit-closure
/// degeneration of an ideal: the base cone tau lives in weight space, the
/// base coordinates correspond to the Hilbert basis of its dual.
struct GeneralizedTestConfig {
  RationalCone base_cone;
  std::vector<LatVec> base_hilbert;
  TorusAction action;
  std::vector<FamilyGen> family_gens;
  bool xi_certified = false;

  bool operator==(const GeneralizedTestConfig&) const = default;
};

enum class FiberPoint { Identity, DeepTorusFixed };

/// Degenerates the ideal along the torus action over the base U_tau: each
/// generator factors as chi^(pivot) * (polynomial with coefficients in the
/// dual-cone semigroup ring).  The base cone must be full-dimensional (its
/// dual pointed); exponents escaping the dual cone raise ConeTooLarge.
GeneralizedTestConfig orbit_closure_family(const std::vector<Polynomial>& ideal,
                                           const TorusAction& action, const RationalCone& tau);

/// Fiber of the family: at the identity every u becomes 1; at the deep
/// torus-fixed point the u's orthogonal to the base cone stay 1 and the rest
/// become 0.
std::vector<Polynomial> family_fiber(const GeneralizedTestConfig& config, FiberPoint point);

/// One term c * t^p * z^e of a classical one-parameter family generator.
struct OneParamTerm {
  Expo expo;
  Rat coeff;
  long long t_power = 0;

  bool operator==(const OneParamTerm&) const = default;
};

struct OneParamGen {
  int nvars = 0;
  std::vector<OneParamTerm> terms;

  bool operator==(const OneParamGen&) const = default;
};

/// Classical one-parameter test configuration: generators over Q[t] plus the
/// one-parameter-subgroup weights on the variables.
struct OneParamTestConfig {
  std::vector<OneParamGen> family_gens;
  std::vector<long long> weight_profile;

  bool operator==(const OneParamTestConfig&) const = default;
};

/// Restricts the family to the one-parameter subgroup xi2 (a primitive
/// lattice vector in the base cone): u with exponent m becomes t^<m, xi2>.
OneParamTestConfig rational_restriction(const GeneralizedTestConfig& config, const LatVec& xi2);

/// The canonical degeneration of the ideal along xi: the orbit-closure
/// family of its reduced Groebner basis over the Groebner cone.  Its
/// identity fiber generates the ideal and its deep fiber is the initial
/// ideal.
GeneralizedTestConfig canonical_degeneration(const std::vector<Polynomial>& ideal,
                                             const TorusAction& action, const XiVec& xi,
                                             long budget = kDefaultSPairBudget);

/// Renders in the style `x^2 + 3*u1*y` / `x + t^2*y` with the given
/// variable names.
std::string family_gen_to_string(const FamilyGen& gen, const std::vector<std::string>& vars);
std::string one_param_gen_to_string(const OneParamGen& gen, const std::vector<std::string>& vars);

}  // namespace degen

#endif
