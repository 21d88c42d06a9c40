#ifndef DEGEN_GROEBNER_HPP
#define DEGEN_GROEBNER_HPP

#include <vector>

#include "degen/cone.hpp"
#include "degen/polynomial.hpp"

namespace degen {

/// Diagonal torus action on the ambient affine space: one weight vector per
/// variable, all of the same rank.
struct TorusAction {
  int rank = 0;
  std::vector<LatVec> weights;

  bool operator==(const TorusAction&) const = default;
};

/// Weight order driven by the irrational direction xi: a term is earlier
/// ("more initial") when its xi-weight is smaller; exact ties fall back to
/// graded reverse-lexicographic comparison, larger monomial first.
struct WeightOrder {
  XiVec xi;
  TorusAction action;
};

/// Sum of exponent_j * <w_j, xi>.
QuadExt monomial_weight(const Expo& e, const WeightOrder& order);

/// -1 when m1 comes earlier (smaller weight, or equal weight and
/// grevlex-greater), 0 when identical, +1 otherwise.
int compare_monomials(const Expo& m1, const Expo& m2, const WeightOrder& order);

/// Index of the initial (earliest) term of a nonzero polynomial.
size_t initial_term_index(const Polynomial& p, const WeightOrder& order);

/// Sum of the terms of minimal xi-weight (weight only, no tiebreak).
Polynomial initial_form(const Polynomial& p, const WeightOrder& order);

inline constexpr long kDefaultSPairBudget = 20000;

/// Remainder of p under weight-order division by the basis; on inhomogeneous
/// input the loop may not shrink, so a step budget aborts with
/// BudgetExceeded.
Polynomial weight_reduce(const Polynomial& p, const std::vector<Polynomial>& basis,
                         const WeightOrder& order, long max_steps = kDefaultSPairBudget);

/// S-polynomial of two nonzero polynomials under the order.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const WeightOrder& order);

/// The canonical reduced Groebner basis of the ideal with respect to the
/// weight order, computed by homogenizing with a weight-zero variable,
/// running Buchberger on the homogeneous ideal, saturating out that
/// variable, and dehomogenizing.
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens, const WeightOrder& order,
                                   long budget = kDefaultSPairBudget);

/// Initial forms of the reduced Groebner basis: generators of the flat
/// degeneration's special fiber.
std::vector<Polynomial> initial_ideal(const std::vector<Polynomial>& gens,
                                      const WeightOrder& order,
                                      long budget = kDefaultSPairBudget);

/// Weight-space cone on which the initial ideal stays constant.
struct GroebnerCone {
  RationalCone cone;
};

GroebnerCone groebner_cone(const std::vector<Polynomial>& gens, const WeightOrder& order,
                           long budget = kDefaultSPairBudget);

/// Dimensions of the total-degree slices 0..D of the quotient by the ideal,
/// exact for ideals with homogeneous generators (degree filtration
/// otherwise).  The variable count comes from the order; D is capped at 8.
std::vector<long long> hilbert_function(const std::vector<Polynomial>& gens,
                                        const WeightOrder& order, int D);

}  // namespace degen

#endif
