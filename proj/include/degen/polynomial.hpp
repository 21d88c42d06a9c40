#ifndef DEGEN_POLYNOMIAL_HPP
#define DEGEN_POLYNOMIAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "degen/rational.hpp"
#include "degen/errors.hpp"

namespace degen {

/// Exponent vector of a monomial, one entry per variable.
using Expo = std::vector<int>;

int expo_degree(const Expo& e);

/// Graded reverse-lexicographic comparison: higher total degree wins; on a
/// degree tie the monomial whose last differing exponent is smaller wins.
bool grevlex_greater(const Expo& x, const Expo& y);

/// Multivariate polynomial over Q in canonical form: terms sorted by
/// grevlex-descending monomial, no duplicates, no zero coefficients.
struct Polynomial {
  int nvars = 0;
  std::vector<std::pair<Expo, Rat>> terms;

  bool operator==(const Polynomial&) const = default;
  bool is_zero() const { return terms.empty(); }
};

/// Normalizes a term list into canonical form.
Polynomial make_poly(int nvars, std::vector<std::pair<Expo, Rat>> terms);

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, const Rat& c);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

/// Multiplication by the single term c * x^e.
Polynomial poly_mul_term(const Polynomial& a, const Expo& e, const Rat& c);

/// Total degree (max over terms); -1 for the zero polynomial.
int poly_degree(const Polynomial& a);

/// Deterministic total order on canonical polynomials (term-by-term).
bool poly_less(const Polynomial& a, const Polynomial& b);

/// Renders in the style `x^2*y + 3*y - 1/2` with the given variable names.
std::string poly_to_string(const Polynomial& a, const std::vector<std::string>& vars);

/// Parses the printed syntax: signed terms of rational coefficients and
/// `name^k` factors joined by `*`.
Polynomial parse_poly(const std::string& text, const std::vector<std::string>& vars);

}  // namespace degen

#endif
