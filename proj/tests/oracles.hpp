#pragma once

// Test-only reference computations. None of these share code paths with
// the library routines they check.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "hodgebox/diffop.hpp"
#include "hodgebox/exactlin.hpp"

namespace oracle {

using hodgebox::BigRational;
using Grid = std::vector<std::vector<BigRational>>;

/// Laplace expansion along the first row.
inline BigRational cofactor_det(const Grid& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  BigRational total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (sgn(a[0][c]) == 0) continue;
    Grid minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigRational> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(a[r][j]);
      minor.push_back(row);
    }
    const BigRational term = a[0][c] * cofactor_det(minor);
    if (c % 2 == 0) total += term;
    else total -= term;
  }
  return total;
}

/// Sum over all permutations.
inline BigRational brute_permanent(const Grid& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  BigRational total = 0;
  do {
    BigRational term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// Mixed volume of boxes from Minkowski's expansion: expand
/// prod_j (sum_i lambda_i w_ij) as a polynomial in lambda and read off the
/// coefficient of the monomial prod_i lambda_i^{mult_i}; V is that
/// coefficient times prod mult_i! / n!.
inline BigRational expansion_mixed_volume(const std::vector<std::vector<BigRational>>& widths,
                                          const std::vector<std::size_t>& mult) {
  const std::size_t r = widths.size();
  const std::size_t n = widths.front().size();
  std::map<std::vector<std::size_t>, BigRational> poly{{std::vector<std::size_t>(r, 0), BigRational(1)}};
  for (std::size_t j = 0; j < n; ++j) {
    std::map<std::vector<std::size_t>, BigRational> next;
    for (const auto& [exps, c] : poly)
      for (std::size_t i = 0; i < r; ++i) {
        if (exps[i] + 1 > mult[i]) continue;  // cannot reach the target monomial
        auto e = exps;
        ++e[i];
        next[e] += c * widths[i][j];
      }
    poly = std::move(next);
  }
  BigRational coeff = poly.count(mult) ? poly[mult] : BigRational(0);
  BigRational fact_prod = 1, nfact = 1;
  for (auto m : mult)
    for (std::size_t t = 2; t <= m; ++t) fact_prod *= static_cast<unsigned long>(t);
  for (std::size_t t = 2; t <= n; ++t) nfact *= static_cast<unsigned long>(t);
  return coeff * fact_prod / nfact;
}

/// Characteristic polynomial coefficients c_0..c_n of det(tI - A) by
/// Faddeev-LeVerrier, exact. c_n = 1.
inline std::vector<BigRational> char_poly(const Grid& a) {
  const std::size_t n = a.size();
  auto mul = [&](const Grid& x, const Grid& y) {
    Grid z(n, std::vector<BigRational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
  };
  std::vector<BigRational> c(n + 1);
  c[n] = 1;
  Grid m(n, std::vector<BigRational>(n));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Grid am = mul(a, m);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = am;  // M_k = A M_{k-1} + c_{n-k+1} I
    Grid amk = mul(a, m);
    BigRational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk[i][i];
    c[n - k] = -tr / BigRational(static_cast<long>(k));
  }
  return c;
}

/// Eigenvalue sign counts of a real symmetric matrix. Its characteristic
/// polynomial is real-rooted, so Descartes' rule of signs is exact: the
/// number of positive roots equals the sign changes of p(t), negative roots
/// those of p(-t), and zero roots the trailing zero coefficients.
inline std::array<std::size_t, 3> descartes_inertia(const Grid& a) {
  const auto c = char_poly(a);
  std::size_t zeros = 0;
  while (zeros < c.size() && sgn(c[zeros]) == 0) ++zeros;
  auto changes = [&](bool negate) {
    std::size_t count = 0;
    int last = 0;
    for (std::size_t i = zeros; i < c.size(); ++i) {
      int s = sgn(c[i]);
      if (negate && i % 2 == 1) s = -s;
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return {changes(false), changes(true), zeros};
}

inline Grid to_grid(const hodgebox::RatMatrix& m) {
  Grid g(m.rows(), std::vector<BigRational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

/// Differentiates a multilinear polynomial one variable at a time.
inline hodgebox::SlabPolynomial differentiate(const hodgebox::SlabPolynomial& p, std::size_t j) {
  using hodgebox::SubsetMask;
  std::map<SubsetMask, BigRational> out;
  for (const auto& [mono, c] : p.terms())
    if (mono & (SubsetMask{1} << j)) out[mono & ~(SubsetMask{1} << j)] += c;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return hodgebox::SlabPolynomial(p.dim(), out);
}

inline hodgebox::SlabPolynomial naive_apply(const hodgebox::SlabOperator& op, const hodgebox::SlabPolynomial& p) {
  using hodgebox::SubsetMask;
  std::map<SubsetMask, BigRational> acc;
  for (const auto& [s, c] : op.coefficients()) {
    hodgebox::SlabPolynomial q = p;
    for (auto j : hodgebox::subset_indices(s)) q = differentiate(q, j);
    for (const auto& [mono, d] : q.terms()) acc[mono] += c * d;
  }
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  return hodgebox::SlabPolynomial(p.dim(), acc);
}

}  // namespace oracle
