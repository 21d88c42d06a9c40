#include "degen/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace degen {

namespace {

void check_order(const WeightOrder& order, int nvars) {
  if (static_cast<int>(order.action.weights.size()) != nvars)
    fail(ErrCode::ShapeMismatch, "one torus weight per variable required");
  for (const LatVec& w : order.action.weights)
    if (static_cast<int>(w.size()) != order.action.rank)
      fail(ErrCode::RankMismatch, "torus weight rank differs from action rank");
  if (static_cast<int>(order.xi.size()) != order.action.rank)
    fail(ErrCode::RankMismatch, "xi rank differs from action rank");
}

}  // namespace

QuadExt monomial_weight(const Expo& e, const WeightOrder& order) {
  check_order(order, static_cast<int>(e.size()));
  LatVec total(order.action.rank, 0);
  for (size_t j = 0; j < e.size(); ++j)
    if (e[j] != 0) total = lat_add(total, lat_scale(order.action.weights[j], e[j]));
  return pairing(total, order.xi);
}

int compare_monomials(const Expo& m1, const Expo& m2, const WeightOrder& order) {
  if (m1 == m2) return 0;
  int c = qx_compare(monomial_weight(m1, order), monomial_weight(m2, order));
  if (c != 0) return c;
  return grevlex_greater(m1, m2) ? -1 : 1;
}

size_t initial_term_index(const Polynomial& p, const WeightOrder& order) {
  if (p.is_zero()) fail(ErrCode::PreconditionViolated, "zero polynomial has no initial term");
  size_t best = 0;
  for (size_t i = 1; i < p.terms.size(); ++i)
    if (compare_monomials(p.terms[i].first, p.terms[best].first, order) < 0) best = i;
  return best;
}

Polynomial initial_form(const Polynomial& p, const WeightOrder& order) {
  if (p.is_zero()) return p;
  std::vector<QuadExt> weights;
  weights.reserve(p.terms.size());
  for (const auto& [e, c] : p.terms) weights.push_back(monomial_weight(e, order));
  size_t best = 0;
  for (size_t i = 1; i < weights.size(); ++i)
    if (qx_compare(weights[i], weights[best]) < 0) best = i;
  std::vector<std::pair<Expo, Rat>> terms;
  for (size_t i = 0; i < weights.size(); ++i)
    if (qx_eq(weights[i], weights[best])) terms.push_back(p.terms[i]);
  return make_poly(p.nvars, std::move(terms));
}

namespace {

bool expo_divides(const Expo& a, const Expo& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Expo expo_sub(const Expo& a, const Expo& b) {
  Expo r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Expo expo_lcm(const Expo& a, const Expo& b) {
  Expo r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool expo_coprime(const Expo& a, const Expo& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

Polynomial make_monic(const Polynomial& p, const WeightOrder& order) {
  if (p.is_zero()) return p;
  const Rat& lc = p.terms[initial_term_index(p, order)].second;
  return poly_scale(p, Rat(1) / lc);
}

// Division step cap for the inner homogeneous loops, where termination is a
// theorem; guards against programmer error rather than input size.
constexpr long kDivisionStepCap = 2'000'000;

}  // namespace

Polynomial weight_reduce(const Polynomial& p, const std::vector<Polynomial>& basis,
                         const WeightOrder& order, long max_steps) {
  std::vector<std::pair<Expo, Rat>> initials;
  for (const Polynomial& b : basis) {
    if (b.is_zero()) fail(ErrCode::PreconditionViolated, "zero polynomial in basis");
    size_t i = initial_term_index(b, order);
    initials.push_back(b.terms[i]);
  }
  Polynomial r = p;
  long steps = 0;
  while (!r.is_zero()) {
    // Earliest reducible term, then the first matching divisor: determinism.
    size_t term_pick = r.terms.size();
    size_t basis_pick = 0;
    for (size_t t = 0; t < r.terms.size(); ++t) {
      for (size_t b = 0; b < basis.size(); ++b) {
        if (!expo_divides(initials[b].first, r.terms[t].first)) continue;
        if (term_pick == r.terms.size() ||
            compare_monomials(r.terms[t].first, r.terms[term_pick].first, order) < 0) {
          term_pick = t;
          basis_pick = b;
        }
        break;
      }
    }
    if (term_pick == r.terms.size()) break;
    if (++steps > max_steps)
      fail(ErrCode::BudgetExceeded, "division step budget exhausted");
    Rat factor = r.terms[term_pick].second / initials[basis_pick].second;
    Expo shift = expo_sub(r.terms[term_pick].first, initials[basis_pick].first);
    r = poly_sub(r, poly_mul_term(basis[basis_pick], shift, factor));
  }
  return r;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const WeightOrder& order) {
  if (f.is_zero() || g.is_zero())
    fail(ErrCode::PreconditionViolated, "s-polynomial of a zero polynomial");
  const auto& tf = f.terms[initial_term_index(f, order)];
  const auto& tg = g.terms[initial_term_index(g, order)];
  Expo lcm = expo_lcm(tf.first, tg.first);
  Polynomial left = poly_mul_term(f, expo_sub(lcm, tf.first), Rat(1) / tf.second);
  Polynomial right = poly_mul_term(g, expo_sub(lcm, tg.first), Rat(1) / tg.second);
  return poly_sub(left, right);
}

namespace {

// Reduced Groebner basis of an ideal with homogeneous generators; the weight
// order restricted to a fixed total degree is a finite total order, so every
// division below terminates.
std::vector<Polynomial> reduced_gb_homogeneous(std::vector<Polynomial> basis,
                                               const WeightOrder& order, long& spair_budget) {
  std::vector<Polynomial> b;
  for (const Polynomial& p : basis)
    if (!p.is_zero()) b.push_back(make_monic(p, order));
  std::sort(b.begin(), b.end(), poly_less);
  b.erase(std::unique(b.begin(), b.end()), b.end());

  std::deque<std::pair<size_t, size_t>> queue;
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j) queue.emplace_back(i, j);

  std::vector<Expo> ins;
  for (const Polynomial& p : b) ins.push_back(p.terms[initial_term_index(p, order)].first);

  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    if (expo_coprime(ins[i], ins[j])) continue;
    if (--spair_budget < 0) fail(ErrCode::BudgetExceeded, "s-pair budget exhausted");
    Polynomial r = weight_reduce(s_polynomial(b[i], b[j], order), b, order, kDivisionStepCap);
    if (r.is_zero()) continue;
    r = make_monic(r, order);
    for (size_t k = 0; k < b.size(); ++k) queue.emplace_back(k, b.size());
    ins.push_back(r.terms[initial_term_index(r, order)].first);
    b.push_back(std::move(r));
  }

  // Minimal basis: drop elements whose initial monomial another one divides.
  std::vector<size_t> idx(b.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
    if (ins[x] != ins[y]) {
      int dx = expo_degree(ins[x]), dy = expo_degree(ins[y]);
      if (dx != dy) return dx < dy;
      return grevlex_greater(ins[y], ins[x]);
    }
    return poly_less(b[x], b[y]);
  });
  std::vector<Polynomial> kept;
  std::vector<Expo> kept_ins;
  for (size_t i : idx) {
    bool redundant = false;
    for (const Expo& e : kept_ins)
      if (expo_divides(e, ins[i])) {
        redundant = true;
        break;
      }
    if (!redundant) {
      kept.push_back(b[i]);
      kept_ins.push_back(ins[i]);
    }
  }

  // Tail reduction to the unique reduced basis.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < kept.size(); ++i) {
      std::vector<Polynomial> others;
      for (size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      if (others.empty()) continue;
      Polynomial r = make_monic(weight_reduce(kept[i], others, order, kDivisionStepCap), order);
      if (!(r == kept[i])) {
        kept[i] = std::move(r);
        changed = true;
      }
    }
  }

  std::sort(kept.begin(), kept.end(), [&](const Polynomial& x, const Polynomial& y) {
    int c = compare_monomials(x.terms[initial_term_index(x, order)].first,
                              y.terms[initial_term_index(y, order)].first, order);
    if (c != 0) return c < 0;
    return poly_less(x, y);
  });
  return kept;
}

Polynomial homogenize(const Polynomial& p) {
  int deg = poly_degree(p);
  std::vector<std::pair<Expo, Rat>> terms;
  for (const auto& [e, c] : p.terms) {
    Expo he = e;
    he.push_back(deg - expo_degree(e));
    terms.emplace_back(std::move(he), c);
  }
  return make_poly(p.nvars + 1, std::move(terms));
}

Polynomial dehomogenize(const Polynomial& p) {
  std::vector<std::pair<Expo, Rat>> terms;
  for (const auto& [e, c] : p.terms) {
    Expo de(e.begin(), e.end() - 1);
    terms.emplace_back(std::move(de), c);
  }
  return make_poly(p.nvars - 1, std::move(terms));
}

// Divides out the largest common power of the homogenizing variable.
Polynomial strip_h(const Polynomial& p) {
  if (p.is_zero()) return p;
  int k = p.terms[0].first.back();
  for (const auto& [e, c] : p.terms) k = std::min(k, e.back());
  if (k == 0) return p;
  Polynomial out = p;
  for (auto& [e, c] : out.terms) e.back() -= k;
  return out;
}

}  // namespace

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens, const WeightOrder& order,
                                   long budget) {
  if (gens.empty()) fail(ErrCode::EmptyInput, "empty generator list");
  int nvars = gens[0].nvars;
  for (const Polynomial& g : gens)
    if (g.nvars != nvars) fail(ErrCode::ShapeMismatch, "mixed variable counts");
  check_order(order, nvars);

  WeightOrder horder = order;
  horder.action.weights.push_back(LatVec(order.action.rank, 0));

  std::vector<Polynomial> hgens;
  for (const Polynomial& g : gens)
    if (!g.is_zero()) hgens.push_back(homogenize(g));
  if (hgens.empty()) return {};

  long remaining = budget;

  // Termwise homogenization of the generators undershoots the homogenization
  // of the full ideal, and the gap depends on the presentation.  Saturating
  // by the extra variable closes it: under plain grevlex with that variable
  // last, stripping its common powers off a reduced basis is exact, because
  // the leading monomial always carries the minimal power.
  WeightOrder plain;
  plain.xi = {QuadExt(0)};
  plain.action.rank = 1;
  plain.action.weights.assign(nvars + 1, LatVec(1, 0));
  std::vector<Polynomial> saturated;
  for (const Polynomial& p : reduced_gb_homogeneous(std::move(hgens), plain, remaining))
    saturated.push_back(strip_h(p));

  // Buchberger under the weight order; the basis of a saturated ideal never
  // strips, so the loop below is a cheap invariant check.
  std::vector<Polynomial> basis = reduced_gb_homogeneous(std::move(saturated), horder, remaining);
  while (true) {
    std::vector<Polynomial> stripped;
    stripped.reserve(basis.size());
    bool any = false;
    for (const Polynomial& p : basis) {
      Polynomial s = strip_h(p);
      any = any || !(s == p);
      stripped.push_back(std::move(s));
    }
    if (!any) break;
    basis = reduced_gb_homogeneous(std::move(stripped), horder, remaining);
  }

  std::vector<Polynomial> out;
  out.reserve(basis.size());
  for (const Polynomial& p : basis) out.push_back(dehomogenize(p));
  std::sort(out.begin(), out.end(), [&](const Polynomial& x, const Polynomial& y) {
    int c = compare_monomials(x.terms[initial_term_index(x, order)].first,
                              y.terms[initial_term_index(y, order)].first, order);
    if (c != 0) return c < 0;
    return poly_less(x, y);
  });
  return out;
}

std::vector<Polynomial> initial_ideal(const std::vector<Polynomial>& gens,
                                      const WeightOrder& order, long budget) {
  std::vector<Polynomial> out;
  for (const Polynomial& g : buchberger(gens, order, budget))
    out.push_back(initial_form(g, order));
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

GroebnerCone groebner_cone(const std::vector<Polynomial>& gens, const WeightOrder& order,
                           long budget) {
  std::vector<Polynomial> basis = buchberger(gens, order, budget);
  std::vector<LatVec> constraints;
  for (const Polynomial& g : basis) {
    std::vector<QuadExt> weights;
    for (const auto& [e, c] : g.terms) weights.push_back(monomial_weight(e, order));
    size_t best = 0;
    for (size_t i = 1; i < weights.size(); ++i)
      if (qx_compare(weights[i], weights[best]) < 0) best = i;
    for (size_t i = 0; i < g.terms.size(); ++i) {
      if (!qx_eq(weights[i], weights[best])) continue;
      // Every other term must stay at weight >= this initial term.
      for (size_t t = 0; t < g.terms.size(); ++t) {
        if (t == i) continue;
        LatVec v(order.action.rank, 0);
        for (int j = 0; j < g.nvars; ++j) {
          int delta = g.terms[t].first[j] - g.terms[i].first[j];
          if (delta != 0) v = lat_add(v, lat_scale(order.action.weights[j], delta));
        }
        if (!lat_is_zero(v)) constraints.push_back(primitivized(v));
      }
    }
  }
  std::sort(constraints.begin(), constraints.end(), lex_less);
  constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());
  return GroebnerCone{cone_from_inequalities(order.action.rank, constraints)};
}

std::vector<long long> hilbert_function(const std::vector<Polynomial>& gens,
                                        const WeightOrder& order, int D) {
  if (D < 1 || D > 8) fail(ErrCode::PreconditionViolated, "degree bound must be in 1..8");
  int nvars = static_cast<int>(order.action.weights.size());
  check_order(order, nvars);
  for (const Polynomial& g : gens)
    if (g.nvars != nvars) fail(ErrCode::ShapeMismatch, "mixed variable counts");

  // All monomials of degree <= D, indexed.
  std::vector<Expo> monos;
  Expo cur(nvars, 0);
  auto enumerate = [&](auto&& self, int var, int left) -> void {
    if (var == nvars) {
      monos.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[var] = k;
      self(self, var + 1, left - k);
    }
    cur[var] = 0;
  };
  enumerate(enumerate, 0, D);
  std::map<Expo, size_t> index;
  for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;

  auto filtration_dim = [&](int d) -> long long {
    long long count = 0;
    for (const Expo& m : monos)
      if (expo_degree(m) <= d) ++count;

    std::vector<std::vector<Rat>> rows;
    for (const Polynomial& g : gens) {
      if (g.is_zero()) continue;
      int gd = poly_degree(g);
      for (const Expo& m : monos) {
        if (expo_degree(m) + gd > d) continue;
        std::vector<Rat> row(monos.size(), Rat(0));
        for (const auto& [e, c] : g.terms) {
          Expo prod(nvars);
          for (int i = 0; i < nvars; ++i) prod[i] = e[i] + m[i];
          row[index.at(prod)] = c;
        }
        rows.push_back(std::move(row));
      }
    }
    // Exact rank by Gaussian elimination.
    long long rank = 0;
    size_t ncols = monos.size();
    size_t r = 0;
    for (size_t col = 0; col < ncols && r < rows.size(); ++col) {
      size_t piv = rows.size();
      for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0) {
          piv = i;
          break;
        }
      if (piv == rows.size()) continue;
      std::swap(rows[r], rows[piv]);
      for (size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Rat f = rows[i][col] / rows[r][col];
        for (size_t cidx = col; cidx < ncols; ++cidx) rows[i][cidx] -= f * rows[r][cidx];
      }
      ++r;
      ++rank;
    }
    return count - rank;
  };

  std::vector<long long> slices;
  long long prev = 0;
  for (int d = 0; d <= D; ++d) {
    long long cur_dim = filtration_dim(d);
    slices.push_back(cur_dim - prev);
    prev = cur_dim;
  }
  return slices;
}

}  // namespace degen
