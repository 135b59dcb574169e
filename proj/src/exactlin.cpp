#include "hodgebox/exactlin.hpp"

#include <algorithm>
#include <stdexcept>

namespace hodgebox {

std::string to_string(const BigRational& value) { return value.get_str(); }

BigRational parse_rational(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("malformed rational: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    if (allow_sign && !part.empty() && part.front() == '-') part.remove_prefix(1);
    return !part.empty() && std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (slash == std::string_view::npos) {
    if (!digits_ok(text, true)) throw bad();
    return BigRational(BigInt(std::string(text)));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  BigInt d(std::string{den});
  if (d == 0) throw bad();
  BigRational r(BigInt(std::string{num}), d);
  r.canonicalize();
  return r;
}

int sign(const BigRational& value) { return sgn(value); }

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<BigRational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    throw std::invalid_argument("RatMatrix: entry count does not match dimensions");
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  std::vector<BigRational> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("RatMatrix: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return RatMatrix(r, c, std::move(data));
}

RatMatrix RatMatrix::from_rows(std::initializer_list<std::initializer_list<BigRational>> rows) {
  std::vector<RatVector> v;
  for (const auto& row : rows) v.emplace_back(row);
  return from_rows(v);
}

RatMatrix RatMatrix::identity(std::size_t n) {
  return generate(n, n, [](std::size_t i, std::size_t j) { return BigRational(i == j ? 1 : 0); });
}

RatMatrix RatMatrix::diagonal(const RatVector& diag) {
  return generate(diag.size(), diag.size(),
                  [&](std::size_t i, std::size_t j) { return i == j ? diag[i] : BigRational(0); });
}

bool RatMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RatMatrix::is_positive() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigRational& v) { return sgn(v) > 0; });
}

bool RatMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigRational& v) { return sgn(v) == 0; });
}

RatMatrix RatMatrix::transpose() const {
  return generate(cols_, rows_, [&](std::size_t i, std::size_t j) { return (*this)(j, i); });
}

RatMatrix RatMatrix::operator*(const RatMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("RatMatrix: product dimension mismatch");
  return generate(rows_, other.cols_, [&](std::size_t i, std::size_t j) {
    BigRational acc = 0;
    for (std::size_t t = 0; t < cols_; ++t) acc += (*this)(i, t) * other(t, j);
    return acc;
  });
}

RatVector RatMatrix::operator*(const RatVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("RatMatrix: vector dimension mismatch");
  RatVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    BigRational acc = 0;
    for (std::size_t t = 0; t < cols_; ++t)
      if (sgn(v[t]) != 0) acc += (*this)(i, t) * v[t];
    out[i] = acc;
  }
  return out;
}

BigInt bareiss_det(std::vector<BigInt> a, std::size_t n) {
  if (a.size() != n * n) throw std::invalid_argument("bareiss_det: size mismatch");
  if (n == 0) return 1;
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * n + j]; };
  BigInt prev = 1;
  int flips = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      flips = -flips;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = at(k, k) * at(i, j) - at(i, k) * at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = std::move(v);
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return flips * at(n - 1, n - 1);
}

BigRational det(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("det: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<BigInt> ints(n * n);
  BigInt scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) ints[i * n + j] = m(i, j).get_num() * (l / m(i, j).get_den());
    scale *= l;
  }
  BigRational out(bareiss_det(std::move(ints), n), scale);
  out.canonicalize();
  return out;
}

Inertia inertia(const RatMatrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("inertia: matrix is not symmetric");
  const std::size_t n = m.rows();
  std::vector<BigRational> a = m.data();
  auto at = [&](std::size_t i, std::size_t j) -> BigRational& { return a[i * n + j]; };
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;

  Inertia result;
  auto drop = [&](std::size_t idx) { active.erase(std::find(active.begin(), active.end(), idx)); };
  BigRational t;
  while (!active.empty()) {
    auto diag = std::find_if(active.begin(), active.end(), [&](std::size_t i) { return sgn(at(i, i)) != 0; });
    if (diag != active.end()) {
      const std::size_t p = *diag;
      const BigRational piv = at(p, p);
      (sgn(piv) > 0 ? result.n_pos : result.n_neg) += 1;
      drop(p);
      for (std::size_t ii = 0; ii < active.size(); ++ii) {
        const std::size_t i = active[ii];
        if (sgn(at(i, p)) == 0) continue;
        const BigRational f = at(i, p) / piv;
        for (std::size_t jj = ii; jj < active.size(); ++jj) {
          const std::size_t j = active[jj];
          if (sgn(at(p, j)) == 0) continue;
          t = f * at(p, j);
          at(i, j) -= t;
          if (i != j) at(j, i) = at(i, j);
        }
      }
      continue;
    }
    // Zero diagonal: look for an off-diagonal entry for a 2x2 pivot.
    std::size_t p = n, q = n;
    for (std::size_t ii = 0; ii < active.size() && p == n; ++ii)
      for (std::size_t jj = ii + 1; jj < active.size(); ++jj)
        if (sgn(at(active[ii], active[jj])) != 0) {
          p = active[ii];
          q = active[jj];
          break;
        }
    if (p == n) {
      result.n_zero += active.size();
      break;
    }
    // [[0, b], [b, 0]] has eigenvalues +b, -b; its inverse is [[0, 1/b], [1/b, 0]].
    const BigRational b = at(p, q);
    result.n_pos += 1;
    result.n_neg += 1;
    drop(p);
    drop(q);
    for (std::size_t ii = 0; ii < active.size(); ++ii) {
      const std::size_t i = active[ii];
      for (std::size_t jj = ii; jj < active.size(); ++jj) {
        const std::size_t j = active[jj];
        t = (at(i, p) * at(q, j) + at(i, q) * at(p, j)) / b;
        if (sgn(t) == 0) continue;
        at(i, j) -= t;
        if (i != j) at(j, i) = at(i, j);
      }
    }
  }
  return result;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<BigRational>& a, std::size_t rows, std::size_t cols) {
  auto at = [&](std::size_t i, std::size_t j) -> BigRational& { return a[i * cols + j]; };
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(at(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(r, j));
    const BigRational inv = 1 / at(r, c);
    for (std::size_t j = c; j < cols; ++j) at(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(at(i, c)) == 0) continue;
      const BigRational f = at(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(at(r, j)) != 0) at(i, j) -= f * at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<RatVector> nullspace_basis(const RatMatrix& m) {
  std::vector<BigRational> a = m.data();
  const std::size_t cols = m.cols();
  const auto pivots = rref(a, m.rows(), cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r * cols + f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const RatMatrix& m) {
  std::vector<BigRational> a = m.data();
  return rref(a, m.rows(), m.cols()).size();
}

RatMatrix principal_submatrix(const RatMatrix& m, std::span<const std::size_t> subset) {
  if (!m.is_square()) throw std::invalid_argument("principal_submatrix: matrix is not square");
  if (subset.empty()) throw std::invalid_argument("principal_submatrix: empty index set");
  std::vector<std::size_t> idx(subset.begin(), subset.end());
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw std::invalid_argument("principal_submatrix: repeated index");
  if (idx.back() >= m.rows()) throw std::out_of_range("principal_submatrix: index out of range");
  return RatMatrix::generate(idx.size(), idx.size(),
                             [&](std::size_t i, std::size_t j) { return m(idx[i], idx[j]); });
}

BigRational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  BigRational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

BigRational bilinear(const RatMatrix& m, const RatVector& x, const RatVector& y) {
  if (m.rows() != x.size() || m.cols() != y.size())
    throw std::invalid_argument("bilinear: dimension mismatch");
  return dot(x, m * y);
}

RatVector primitive_integer_vector(const RatVector& v) {
  BigInt l = 1, g = 0;
  for (const auto& e : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
  for (const auto& e : v) {
    BigInt num = e.get_num() * (l / e.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return v;
  RatVector out;
  out.reserve(v.size());
  for (const auto& e : v) out.emplace_back(BigRational(e.get_num() * (l / e.get_den()) / g));
  return out;
}

}  // namespace hodgebox
