#include "degen/cone.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace degen {

namespace {

using I128 = __int128;

long long checked_ll(I128 v) {
  if (v > I128(9'000'000'000'000'000'000LL) || v < -I128(9'000'000'000'000'000'000LL))
    fail(ErrCode::ConsistencyError, "integer overflow in cone computation");
  return static_cast<long long>(v);
}

LatVec lat_sub(const LatVec& x, const LatVec& y) {
  LatVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = checked_ll(I128(x[i]) - I128(y[i]));
  return r;
}

// x*cx + y*cy, overflow-checked.
LatVec lat_combine(const LatVec& x, long long cx, const LatVec& y, long long cy) {
  LatVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i)
    r[i] = checked_ll(I128(x[i]) * cx + I128(y[i]) * cy);
  return r;
}

void sort_dedup(std::vector<LatVec>& vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

}  // namespace

long long dot_ll(const LatVec& x, const LatVec& y) {
  if (x.size() != y.size()) fail(ErrCode::RankMismatch, "lattice vector ranks differ");
  I128 acc = 0;
  for (size_t i = 0; i < x.size(); ++i) acc += I128(x[i]) * I128(y[i]);
  return checked_ll(acc);
}

QuadExt pairing(const LatVec& m, const XiVec& xi) {
  if (m.size() != xi.size()) fail(ErrCode::RankMismatch, "pairing ranks differ");
  QuadExt acc;
  for (size_t i = 0; i < m.size(); ++i)
    acc = qx_add(acc, qx_mul(QuadExt(make_rat(m[i])), xi[i]));
  return acc;
}

LatVec primitivized(LatVec v) {
  long long g = 0;
  for (long long c : v) g = std::gcd(g, c < 0 ? -c : c);
  if (g > 1)
    for (long long& c : v) c /= g;
  return v;
}

bool lex_less(const LatVec& x, const LatVec& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

LatVec lat_add(const LatVec& x, const LatVec& y) {
  LatVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = checked_ll(I128(x[i]) + I128(y[i]));
  return r;
}

LatVec lat_scale(const LatVec& x, long long c) {
  LatVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = checked_ll(I128(x[i]) * c);
  return r;
}

bool lat_is_zero(const LatVec& x) {
  return std::all_of(x.begin(), x.end(), [](long long c) { return c == 0; });
}

std::string lat_to_string(const LatVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

VRep polar(int rank, const std::vector<LatVec>& constraints) {
  std::vector<LatVec> lin;
  for (int i = 0; i < rank; ++i) {
    LatVec e(rank, 0);
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<LatVec> rays;
  std::vector<LatVec> processed;

  for (const LatVec& a : constraints) {
    if (static_cast<int>(a.size()) != rank) fail(ErrCode::RankMismatch, "constraint rank differs");
    if (lat_is_zero(a)) continue;

    size_t l0i = lin.size();
    for (size_t i = 0; i < lin.size(); ++i)
      if (dot_ll(a, lin[i]) != 0) {
        l0i = i;
        break;
      }

    if (l0i < lin.size()) {
      // Reduce the lineality space against the new halfspace; the pivot
      // vector becomes a ray on the positive side.
      LatVec l0 = lin[l0i];
      long long s0 = dot_ll(a, l0);
      std::vector<LatVec> new_lin;
      for (size_t i = 0; i < lin.size(); ++i) {
        if (i == l0i) continue;
        long long s = dot_ll(a, lin[i]);
        new_lin.push_back(primitivized(lat_combine(lin[i], s0, l0, -s)));
      }
      long long s0abs = s0 < 0 ? -s0 : s0;
      long long sgn0 = s0 < 0 ? -1 : 1;
      std::vector<LatVec> new_rays;
      for (const LatVec& r : rays) {
        long long s = dot_ll(a, r);
        LatVec proj = primitivized(lat_combine(r, s0abs, l0, -sgn0 * s));
        if (!lat_is_zero(proj)) new_rays.push_back(std::move(proj));
      }
      new_rays.push_back(primitivized(sgn0 > 0 ? l0 : lat_scale(l0, -1)));
      lin = std::move(new_lin);
      rays = std::move(new_rays);
      sort_dedup(rays);
    } else {
      std::vector<size_t> plus, minus;
      std::vector<long long> vals(rays.size());
      for (size_t i = 0; i < rays.size(); ++i) {
        vals[i] = dot_ll(a, rays[i]);
        if (vals[i] > 0) plus.push_back(i);
        if (vals[i] < 0) minus.push_back(i);
      }
      if (!minus.empty()) {
        // Tight constraint sets drive the combinatorial adjacency test.
        std::vector<std::vector<size_t>> tight(rays.size());
        for (size_t i = 0; i < rays.size(); ++i)
          for (size_t k = 0; k < processed.size(); ++k)
            if (dot_ll(processed[k], rays[i]) == 0) tight[i].push_back(k);

        std::vector<LatVec> next;
        for (size_t i = 0; i < rays.size(); ++i)
          if (vals[i] >= 0) next.push_back(rays[i]);
        for (size_t p : plus)
          for (size_t n : minus) {
            std::vector<size_t> common;
            std::set_intersection(tight[p].begin(), tight[p].end(), tight[n].begin(),
                                  tight[n].end(), std::back_inserter(common));
            bool adjacent = true;
            for (size_t q = 0; q < rays.size() && adjacent; ++q) {
              if (q == p || q == n) continue;
              adjacent = !std::includes(tight[q].begin(), tight[q].end(), common.begin(),
                                        common.end());
            }
            if (!adjacent) continue;
            LatVec combo = primitivized(lat_combine(rays[p], -vals[n], rays[n], vals[p]));
            if (!lat_is_zero(combo)) next.push_back(combo);
          }
        rays = std::move(next);
        sort_dedup(rays);
      }
    }
    processed.push_back(a);
  }
  return {std::move(lin), std::move(rays)};
}

namespace {

// Hermite-canonical integer basis rows of the lattice spanned by `rows`.
std::vector<LatVec> hnf_rows(std::vector<LatVec> rows_ll) {
  std::vector<std::vector<mpz_class>> rows;
  for (const LatVec& r : rows_ll) {
    std::vector<mpz_class> row;
    for (long long c : r) row.emplace_back(static_cast<long>(c));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return {};
  size_t ncols = rows[0].size();
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
    for (size_t j = r + 1; j < rows.size(); ++j) {
      // Euclidean steps in this column.
      while (rows[j][col] != 0) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[j][col].get_mpz_t(), rows[r][col].get_mpz_t());
        for (size_t k = 0; k < ncols; ++k) rows[j][k] -= q * rows[r][k];
        if (rows[j][col] != 0) std::swap(rows[j], rows[r]);
      }
    }
    if (rows[r][col] < 0)
      for (size_t k = 0; k < ncols; ++k) rows[r][k] = -rows[r][k];
    for (size_t j = 0; j < r; ++j) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[j][col].get_mpz_t(), rows[r][col].get_mpz_t());
      if (q != 0)
        for (size_t k = 0; k < ncols; ++k) rows[j][k] -= q * rows[r][k];
    }
    ++r;
  }
  std::vector<LatVec> out;
  for (size_t i = 0; i < r; ++i) {
    LatVec row(ncols);
    for (size_t k = 0; k < ncols; ++k) {
      if (!rows[i][k].fits_slong_p())
        fail(ErrCode::ConsistencyError, "integer overflow in lattice normal form");
      row[k] = rows[i][k].get_si();
    }
    out.push_back(std::move(row));
  }
  return out;
}

// Saturated canonical basis of the space spanned by the given vectors.
std::vector<LatVec> saturated_basis(int rank, const std::vector<LatVec>& vecs) {
  if (vecs.empty()) return {};
  std::vector<std::vector<Rat>> rows;
  for (const LatVec& v : vecs) {
    std::vector<Rat> row;
    for (long long c : v) row.emplace_back(make_rat(c));
    rows.push_back(std::move(row));
  }
  std::vector<LatVec> ortho = rational_kernel(rows, rank);
  std::vector<std::vector<Rat>> orows;
  for (const LatVec& v : ortho) {
    std::vector<Rat> row;
    for (long long c : v) row.emplace_back(make_rat(c));
    orows.push_back(std::move(row));
  }
  return rational_kernel(orows, rank);
}

// Canonical representative of a ray modulo a lineality space: the primitive
// integer vector along the orthogonal projection. Returns the zero vector if
// the ray lies inside the space.
LatVec ray_mod_lineality(const LatVec& ray, const std::vector<LatVec>& lin) {
  if (lin.empty()) return primitivized(ray);
  size_t k = lin.size();
  size_t n = ray.size();
  // Solve (B B^T) lambda = B ray, then project.
  std::vector<std::vector<Rat>> g(k, std::vector<Rat>(k + 1, Rat(0)));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) g[i][j] = make_rat(dot_ll(lin[i], lin[j]));
    g[i][k] = make_rat(dot_ll(lin[i], ray));
  }
  // Gaussian elimination; the Gram matrix of independent rows is invertible.
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    while (piv < k && g[piv][col] == 0) ++piv;
    if (piv == k) fail(ErrCode::ConsistencyError, "degenerate lineality basis");
    std::swap(g[col], g[piv]);
    for (size_t j = 0; j < k; ++j) {
      if (j == col || g[j][col] == 0) continue;
      Rat f = g[j][col] / g[col][col];
      for (size_t c = col; c <= k; ++c) g[j][c] -= f * g[col][c];
    }
  }
  std::vector<Rat> proj(n, Rat(0));
  for (size_t i = 0; i < n; ++i) proj[i] = make_rat(ray[i]);
  for (size_t i = 0; i < k; ++i) {
    Rat lambda = g[i][k] / g[i][i];
    for (size_t c = 0; c < n; ++c) proj[c] -= lambda * make_rat(lin[i][c]);
  }
  mpz_class lcm_den(1);
  for (const Rat& q : proj) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
  LatVec out(n);
  for (size_t i = 0; i < n; ++i) {
    mpz_class num = proj[i].get_num() * (lcm_den / proj[i].get_den());
    if (!num.fits_slong_p()) fail(ErrCode::ConsistencyError, "integer overflow in projection");
    out[i] = num.get_si();
  }
  return primitivized(out);
}

RationalCone assemble_cone(int rank, const VRep& v) {
  std::vector<LatVec> lin = saturated_basis(rank, v.lineality);
  std::vector<LatVec> gens;
  for (const LatVec& r : v.rays) {
    LatVec rep = ray_mod_lineality(r, lin);
    if (!lat_is_zero(rep)) gens.push_back(rep);
  }
  for (const LatVec& l : lin) {
    gens.push_back(l);
    gens.push_back(lat_scale(l, -1));
  }
  sort_dedup(gens);
  return RationalCone{rank, std::move(gens)};
}

void check_rank(int rank) {
  if (rank < 1) fail(ErrCode::ConsistencyError, "rank must be positive");
  if (rank > 4) fail(ErrCode::RankTooLarge, "cone computations support rank <= 4");
}

}  // namespace

RationalCone make_cone(int rank, std::vector<LatVec> generators) {
  check_rank(rank);
  std::vector<LatVec> gens;
  for (LatVec& g : generators) {
    if (static_cast<int>(g.size()) != rank) fail(ErrCode::RankMismatch, "generator rank differs");
    LatVec p = primitivized(std::move(g));
    if (!lat_is_zero(p)) gens.push_back(std::move(p));
  }
  sort_dedup(gens);
  VRep dual = polar(rank, gens);
  std::vector<LatVec> dual_gens = dual.rays;
  for (const LatVec& l : dual.lineality) {
    dual_gens.push_back(l);
    dual_gens.push_back(lat_scale(l, -1));
  }
  return assemble_cone(rank, polar(rank, dual_gens));
}

RationalCone dual_cone(const RationalCone& c) {
  check_rank(c.rank);
  return assemble_cone(c.rank, polar(c.rank, c.generators));
}

RationalCone cone_from_inequalities(int rank, const std::vector<LatVec>& normals) {
  check_rank(rank);
  return assemble_cone(rank, polar(rank, normals));
}

bool cone_is_pointed(const RationalCone& c) {
  for (const LatVec& g : c.generators) {
    LatVec neg = lat_scale(g, -1);
    if (std::binary_search(c.generators.begin(), c.generators.end(), neg, lex_less)) return false;
  }
  return true;
}

bool cone_contains(const RationalCone& c, const XiVec& xi) {
  if (static_cast<int>(xi.size()) != c.rank) fail(ErrCode::RankMismatch, "weight vector rank differs");
  VRep d = polar(c.rank, c.generators);
  for (const LatVec& m : d.rays)
    if (qx_sign(pairing(m, xi)) < 0) return false;
  for (const LatVec& l : d.lineality)
    if (qx_sign(pairing(l, xi)) != 0) return false;
  return true;
}

bool cone_contains_lat(const RationalCone& c, const LatVec& v) {
  XiVec xi;
  for (long long x : v) xi.emplace_back(make_rat(x));
  return cone_contains(c, xi);
}

bool cone_contains_strict(const RationalCone& c, const XiVec& xi) {
  if (static_cast<int>(xi.size()) != c.rank) fail(ErrCode::RankMismatch, "weight vector rank differs");
  VRep d = polar(c.rank, c.generators);
  for (const LatVec& m : d.rays)
    if (qx_sign(pairing(m, xi)) <= 0) return false;
  for (const LatVec& l : d.lineality)
    if (qx_sign(pairing(l, xi)) != 0) return false;
  return true;
}

std::vector<LatVec> hilbert_basis(const RationalCone& c) {
  if (c.rank > 3) fail(ErrCode::RankTooLarge, "hilbert_basis supports rank <= 3");
  if (!cone_is_pointed(c)) fail(ErrCode::NotPointed, "hilbert_basis requires a pointed cone");
  if (c.generators.empty()) return {};

  VRep d = polar(c.rank, c.generators);
  auto member = [&](const LatVec& v) {
    for (const LatVec& m : d.rays)
      if (dot_ll(m, v) < 0) return false;
    for (const LatVec& l : d.lineality)
      if (dot_ll(l, v) != 0) return false;
    return true;
  };

  // Positive grading on the cone: sum of dual rays.
  LatVec u(c.rank, 0);
  for (const LatVec& m : d.rays) u = lat_add(u, m);

  // Indecomposable elements lie in the union of generator parallelepipeds,
  // hence inside the coordinate box bounded by the generator column sums.
  LatVec bound(c.rank, 0);
  for (const LatVec& g : c.generators)
    for (int i = 0; i < c.rank; ++i) bound[i] += (g[i] < 0 ? -g[i] : g[i]);

  std::vector<LatVec> candidates;
  LatVec point(c.rank, 0);
  auto enumerate = [&](auto&& self, int coord) -> void {
    if (coord == c.rank) {
      if (!lat_is_zero(point) && member(point)) candidates.push_back(point);
      return;
    }
    for (long long v = -bound[coord]; v <= bound[coord]; ++v) {
      point[coord] = v;
      self(self, coord + 1);
    }
  };
  enumerate(enumerate, 0);

  std::sort(candidates.begin(), candidates.end(), [&](const LatVec& x, const LatVec& y) {
    long long gx = dot_ll(u, x), gy = dot_ll(u, y);
    if (gx != gy) return gx < gy;
    return lex_less(x, y);
  });

  std::vector<LatVec> basis;
  for (const LatVec& x : candidates) {
    bool decomposable = false;
    for (const LatVec& g : basis) {
      LatVec rest = lat_sub(x, g);
      if (!lat_is_zero(rest) && member(rest)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) basis.push_back(x);
  }
  std::sort(basis.begin(), basis.end(), lex_less);
  return basis;
}

bool certify_irrational(const XiVec& xi) {
  if (xi.empty()) return false;
  std::vector<std::vector<Rat>> rows(2, std::vector<Rat>(xi.size()));
  for (size_t i = 0; i < xi.size(); ++i) {
    rows[0][i] = xi[i].a;
    rows[1][i] = xi[i].b;
  }
  return rational_kernel(rows, static_cast<int>(xi.size())).empty();
}

std::vector<LatVec> rational_kernel(const std::vector<std::vector<Rat>>& rows, int ncols) {
  std::vector<std::vector<Rat>> m = rows;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (int col = 0; col < ncols && r < m.size(); ++col) {
    size_t piv = m.size();
    for (size_t i = r; i < m.size(); ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    Rat lead = m[r][col];
    for (int c = 0; c < ncols; ++c) m[r][c] /= lead;
    for (size_t j = 0; j < m.size(); ++j) {
      if (j == r || m[j][col] == 0) continue;
      Rat f = m[j][col];
      for (int c = 0; c < ncols; ++c) m[j][c] -= f * m[r][c];
    }
    pivot_col.push_back(col);
    ++r;
  }

  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;

  std::vector<LatVec> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(ncols, Rat(0));
    v[f] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][f];
    mpz_class lcm_den(1);
    for (const Rat& q : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
    LatVec iv(ncols);
    for (int c = 0; c < ncols; ++c) {
      mpz_class num = v[c].get_num() * (lcm_den / v[c].get_den());
      if (!num.fits_slong_p()) fail(ErrCode::ConsistencyError, "integer overflow in kernel");
      iv[c] = num.get_si();
    }
    basis.push_back(primitivized(iv));
  }
  return hnf_rows(basis);
}

std::vector<QuadExt> envelope_breakpoints(const std::vector<WallPoint>& walls) {
  std::vector<std::pair<QuadExt, QuadExt>> pairs;
  for (const WallPoint& w : walls) pairs.emplace_back(QuadExt(w.level), w.slope);
  return envelope_scales(pairs);
}

std::vector<QuadExt> envelope_scales(
    const std::vector<std::pair<QuadExt, QuadExt>>& level_slope) {
  if (level_slope.empty()) fail(ErrCode::EmptyInput, "no wall points given");
  std::vector<QuadExt> scales;
  for (const auto& [level, slope] : level_slope) {
    if (qx_sign(slope) <= 0) fail(ErrCode::NonpositiveSlope, "wall slope must be positive");
    if (qx_sign(level) < 0) fail(ErrCode::PreconditionViolated, "wall level must be nonnegative");
    scales.push_back(qx_div(level, slope));
  }
  std::sort(scales.begin(), scales.end(), [](const QuadExt& x, const QuadExt& y) {
    return qx_compare(x, y) > 0;
  });
  scales.erase(std::unique(scales.begin(), scales.end(),
                           [](const QuadExt& x, const QuadExt& y) { return qx_eq(x, y); }),
               scales.end());
  return scales;
}

}  // namespace degen
