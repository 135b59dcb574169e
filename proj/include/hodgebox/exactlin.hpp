#pragma once

// Exact rational scalars, vectors and matrices.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hodgebox {

using BigInt = mpz_class;
using BigRational = mpq_class;
using RatVector = std::vector<BigRational>;

/// Canonical text form: "p/q", or "p" when q = 1. Sign lives on the numerator.
std::string to_string(const BigRational& value);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator. The result is always in lowest terms.
BigRational parse_rational(std::string_view text);

int sign(const BigRational& value);

/// Dense row-major matrix of exact rationals. Values are immutable once
/// built; every operation returns a new matrix.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<BigRational> entries);

  static RatMatrix from_rows(const std::vector<RatVector>& rows);
  static RatMatrix from_rows(std::initializer_list<std::initializer_list<BigRational>> rows);
  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(const RatVector& diag);

  /// Builds a matrix entry by entry; `f(i, j)` must be callable.
  template <typename F>
  static RatMatrix generate(std::size_t rows, std::size_t cols, F&& f) {
    std::vector<BigRational> data;
    data.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) data.emplace_back(f(i, j));
    return RatMatrix(rows, cols, std::move(data));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  /// All entries strictly positive.
  bool is_positive() const;
  bool is_zero() const;

  const BigRational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<const BigRational> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  const std::vector<BigRational>& data() const { return data_; }

  RatMatrix transpose() const;
  RatMatrix operator*(const RatMatrix& other) const;
  RatVector operator*(const RatVector& v) const;

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigRational> data_;
};

struct Inertia {
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  std::size_t n_zero = 0;

  std::size_t dim() const { return n_pos + n_neg + n_zero; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Determinant by fraction-free (Bareiss) elimination. Rows are first scaled
/// to integers, so all elimination happens over BigInt.
BigRational det(const RatMatrix& m);

/// Bareiss determinant of an integer matrix given row-major.
BigInt bareiss_det(std::vector<BigInt> a, std::size_t n);

/// Exact eigenvalue-sign counts of a symmetric matrix via symmetric Gaussian
/// reduction. Diagonal pivots are used while available; a fully zero diagonal
/// with a nonzero off-diagonal entry is eliminated with a 2x2 pivot, which
/// carries one positive and one negative eigenvalue.
Inertia inertia(const RatMatrix& m);

/// Basis of ker(m), read off the reduced row echelon form (one vector per
/// free column, with a 1 in that column).
std::vector<RatVector> nullspace_basis(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Rows and columns restricted to `subset`, taken in ascending index order.
RatMatrix principal_submatrix(const RatMatrix& m, std::span<const std::size_t> subset);

BigRational dot(const RatVector& a, const RatVector& b);
/// <x, M y>
BigRational bilinear(const RatMatrix& m, const RatVector& x, const RatVector& y);

/// Scales v by a positive rational so the result is an integer vector whose
/// entries have gcd 1. The zero vector is returned unchanged.
RatVector primitive_integer_vector(const RatVector& v);

}  // namespace hodgebox
