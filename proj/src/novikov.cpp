#include "degen/novikov.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace degen {

namespace {

// Memoized search: can `value` be written as an N-combination of `gens`?
// Every generator is positive, so each step strictly decreases the value and
// the recursion is finite.
bool decompose(const std::vector<QuadExt>& gens, const QuadExt& value,
               std::set<QuadExt, QuadExtLess>& failed) {
  int s = qx_sign(value);
  if (s < 0) return false;
  if (s == 0) return true;
  if (failed.count(value)) return false;
  for (const QuadExt& g : gens)
    if (decompose(gens, qx_sub(value, g), failed)) return true;
  failed.insert(value);
  return false;
}

}  // namespace

GammaMonoid make_monoid(long d, std::vector<QuadExt> generators) {
  std::vector<QuadExt> gens;
  for (const QuadExt& g : generators) {
    if (g.d != 0) {
      if (d == 0) d = g.d;
      if (g.d != d) fail(ErrCode::MismatchedField, "monoid generator in a different field");
    }
    int s = qx_sign(g);
    if (s < 0) fail(ErrCode::NegativeGenerator, "monoid generator " + qx_to_string(g));
    if (s > 0) gens.push_back(g);
  }
  std::sort(gens.begin(), gens.end(),
            [](const QuadExt& x, const QuadExt& y) { return qx_lt(x, y); });
  gens.erase(std::unique(gens.begin(), gens.end(),
                         [](const QuadExt& x, const QuadExt& y) { return qx_eq(x, y); }),
             gens.end());

  // A generator is redundant exactly when it is the sum of two generators
  // plus a monoid element; keeping the irreducible ones yields the unique
  // minimal generating set.
  std::vector<QuadExt> atoms;
  for (const QuadExt& g : gens) {
    bool reducible = false;
    std::set<QuadExt, QuadExtLess> failed;
    for (size_t i = 0; i < gens.size() && !reducible; ++i)
      for (size_t j = i; j < gens.size() && !reducible; ++j) {
        QuadExt rest = qx_sub(g, qx_add(gens[i], gens[j]));
        if (qx_sign(rest) < 0) continue;
        reducible = decompose(gens, rest, failed);
      }
    if (!reducible) atoms.push_back(g);
  }
  return GammaMonoid{d, std::move(atoms)};
}

bool monoid_contains(const GammaMonoid& m, const QuadExt& value) {
  std::set<QuadExt, QuadExtLess> failed;
  return decompose(m.generators, value, failed);
}

NovikovSeries make_series(std::vector<std::pair<QuadExt, Rat>> terms, QuadExt precision) {
  std::map<QuadExt, Rat, QuadExtLess> merged;
  for (auto& [e, c] : terms) {
    if (c == 0) continue;
    if (qx_compare(e, precision) >= 0) continue;
    auto [it, fresh] = merged.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) merged.erase(it);
    }
  }
  NovikovSeries out;
  out.precision = std::move(precision);
  out.terms.assign(merged.begin(), merged.end());
  return out;
}

namespace {

// Valuation used by the precision propagation rule: the precision itself
// stands in when no term is stored.
QuadExt val_or_precision(const NovikovSeries& a) {
  return a.terms.empty() ? a.precision : a.terms.front().first;
}

}  // namespace

NovikovSeries series_add(const NovikovSeries& a, const NovikovSeries& b) {
  QuadExt prec = qx_compare(a.precision, b.precision) <= 0 ? a.precision : b.precision;
  std::vector<std::pair<QuadExt, Rat>> terms = a.terms;
  terms.insert(terms.end(), b.terms.begin(), b.terms.end());
  return make_series(std::move(terms), std::move(prec));
}

NovikovSeries series_mul(const NovikovSeries& a, const NovikovSeries& b) {
  QuadExt pa = qx_add(a.precision, val_or_precision(b));
  QuadExt pb = qx_add(b.precision, val_or_precision(a));
  QuadExt prec = qx_compare(pa, pb) <= 0 ? pa : pb;
  std::vector<std::pair<QuadExt, Rat>> terms;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) terms.emplace_back(qx_add(ea, eb), ca * cb);
  return make_series(std::move(terms), std::move(prec));
}

NovikovSeries series_shift(const NovikovSeries& a, const QuadExt& shift) {
  NovikovSeries out;
  out.precision = qx_add(a.precision, shift);
  out.terms.reserve(a.terms.size());
  for (const auto& [e, c] : a.terms) out.terms.emplace_back(qx_add(e, shift), c);
  return out;
}

std::optional<QuadExt> series_valuation(const NovikovSeries& a) {
  if (a.terms.empty()) return std::nullopt;
  return a.terms.front().first;
}

Rat series_coeff_at(const NovikovSeries& a, const QuadExt& e) {
  for (const auto& [exp, c] : a.terms)
    if (qx_eq(exp, e)) return c;
  return Rat(0);
}

std::string series_to_string(const NovikovSeries& a) {
  std::string s;
  for (const auto& [e, c] : a.terms) {
    if (!s.empty()) s += " + ";
    s += rat_to_string(c) + " t^(" + qx_to_string(e) + ")";
  }
  if (!s.empty()) s += " + ";
  s += "O(t^(" + qx_to_string(a.precision) + "))";
  return s;
}

RingDesc make_ring(long d, std::vector<QuadExt> monoid_generators,
                   std::vector<QuadExt> pairing_generators) {
  RingDesc ring;
  ring.monoid = make_monoid(d, std::move(monoid_generators));
  for (const QuadExt& g : pairing_generators)
    if (qx_sign(g) <= 0) fail(ErrCode::NonpositiveInput, "pairing generator must be positive");
  ring.pairing_generators = std::move(pairing_generators);
  return ring;
}

RingDesc extend_ring(const RingDesc& ring, const QuadExt& pi_valuation, const QuadExt& m_value) {
  if (qx_sign(pi_valuation) <= 0)
    fail(ErrCode::NonpositiveInput, "pi valuation must be positive");
  if (qx_sign(m_value) <= 0) fail(ErrCode::NonpositiveInput, "m value must be positive");
  QuadExt b = qx_div(pi_valuation, m_value);
  std::vector<QuadExt> gens = ring.monoid.generators;
  for (const QuadExt& g : ring.pairing_generators) gens.push_back(qx_mul(b, g));
  RingDesc out;
  out.monoid = make_monoid(ring.monoid.d, std::move(gens));
  out.pairing_generators = ring.pairing_generators;
  out.relations = ring.relations;
  out.relations.emplace_back(pi_valuation, m_value);
  return out;
}

std::vector<QuadExt> graded_generators(const RingDesc& ring) {
  return ring.monoid.generators;
}

}  // namespace degen
