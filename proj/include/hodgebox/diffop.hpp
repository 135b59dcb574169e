#pragma once

// Constant-coefficient differential operators acting on the cube's volume
// polynomial V = s_1 s_2 ... s_n, written in slab coordinates
// s_j = h_j^+ + h_j^-.
//
// Since d_j^2 V = 0, an operator's action on V and on every derivative of V
// is determined by its squarefree part. Operators are stored that way, which
// is exactly the quotient by the annihilator of V.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hodgebox/cubefam.hpp"
#include "hodgebox/exactlin.hpp"

namespace hodgebox {

/// Subset of {0, ..., n-1} as a bitmask.
using SubsetMask = std::uint32_t;

inline constexpr std::size_t kMaxSlabDim = 24;

std::vector<std::size_t> subset_indices(SubsetMask mask);
SubsetMask subset_mask(std::span<const std::size_t> indices);

/// All k-element subsets of {0..n-1} in lexicographic order of their sorted
/// index lists.
std::vector<SubsetMask> k_subsets(std::size_t n, std::size_t k);

/// Homogeneous degree-k operator sum_S c_S d^S over k-subsets S.
class SlabOperator {
 public:
  SlabOperator(std::size_t n, std::size_t k);
  SlabOperator(std::size_t n, std::size_t k, std::map<SubsetMask, BigRational> coefficients);

  /// Operator whose coefficients on k_subsets(n, k) are `coords`.
  static SlabOperator from_coordinates(std::size_t n, std::size_t k, const RatVector& coords);

  std::size_t dim() const { return n_; }
  std::size_t degree() const { return k_; }
  const std::map<SubsetMask, BigRational>& coefficients() const { return coeffs_; }
  BigRational coefficient(SubsetMask s) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree above the dimension: the operator annihilates V and is zero.
  bool exceeds_dimension() const { return k_ > n_; }

  /// Coefficients on k_subsets(n, k).
  RatVector coordinates() const;

  SlabOperator operator+(const SlabOperator& other) const;
  SlabOperator scaled(const BigRational& c) const;
  /// Composition, reduced to its squarefree part.
  SlabOperator operator*(const SlabOperator& other) const;

  friend bool operator==(const SlabOperator&, const SlabOperator&) = default;

 private:
  std::size_t n_;
  std::size_t k_;
  std::map<SubsetMask, BigRational> coeffs_;
};

/// Multilinear polynomial in s_1..s_n; monomials keyed by their variable set.
class SlabPolynomial {
 public:
  explicit SlabPolynomial(std::size_t n);
  SlabPolynomial(std::size_t n, std::map<SubsetMask, BigRational> terms);

  /// V = s_1 ... s_n.
  static SlabPolynomial volume(std::size_t n);

  std::size_t dim() const { return n_; }
  const std::map<SubsetMask, BigRational>& terms() const { return terms_; }
  BigRational coefficient(SubsetMask monomial) const;
  bool is_zero() const { return terms_.empty(); }
  /// Evaluation at slab widths s.
  BigRational evaluate(const RatVector& s) const;

  friend bool operator==(const SlabPolynomial&, const SlabPolynomial&) = default;

 private:
  std::size_t n_;
  std::map<SubsetMask, BigRational> terms_;
};

/// (D_{h_K})^k restricted to its squarefree part: coefficient k! prod_{j in S} w_j.
/// For k > n the result is the zero operator and exceeds_dimension() is set.
SlabOperator op_from_box(const BoxBody& body, std::size_t k);

SlabPolynomial apply(const SlabOperator& op, const SlabPolynomial& p);

/// D_{h_{B_1}} ... D_{h_{B_r}} V.
SlabPolynomial derivative_image(std::size_t n, std::span<const BoxBody> bodies);

/// Basis of the operators alpha of degree k with
/// alpha D_{h_L} D_{h_{C_1}} ... D_{h_{C_{n-2k}}} V = 0 identically. The
/// basis vectors are primitive integer vectors in k_subsets order.
std::vector<SlabOperator> primitive_space_basis(std::size_t k, const BoxBody& L,
                                                std::span<const BoxBody> tail);

bool is_primitive(const SlabOperator& alpha, const BoxBody& L, std::span<const BoxBody> tail);

/// a b D_{h_{C_1}} ... D_{h_{C_{n-2k}}} V, a scalar.
BigRational hr_form(const SlabOperator& a, const SlabOperator& b, std::span<const BoxBody> tail);

/// Matrix of hr_form over the basis {d^S : |S| = k}.
RatMatrix hr_pairing_matrix(std::size_t n, std::size_t k, std::span<const BoxBody> tail);

struct HodgeRiemannCheck {
  BigRational value;          // alpha^2 D_C ... V
  bool sign_ok = false;       // (-1)^k value >= 0
  bool equality_iff_zero_ok = false;  // (value == 0) == (alpha V == 0)
};

/// Throws std::invalid_argument if alpha is not primitive for (L, tail).
HodgeRiemannCheck hr_check(const SlabOperator& alpha, const BoxBody& L, std::span<const BoxBody> tail);

/// sum_i x_i (D_{h_{K_i}})^k with every K_i in the cube family.
struct PowerCombination {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<WeightedBody> terms;

  SlabOperator as_operator() const;
};

/// Shifts t used to replace a degenerate box B by the boxes B + t*cube.
std::vector<BigRational> shift_values(std::size_t k);
/// Weights w_t with sum_t w_t (D_{B + t cube})^k = (D_B)^k.
std::vector<BigRational> shift_weights(std::size_t k);

/// Writes alpha as a combination of k-th powers of derivatives along boxes.
/// Each d^S is polarized into powers along indicator boxes B_T, T a nonempty
/// subset of S; each B_T is then traded for the nondegenerate shifts
/// B_T + t*cube. Repeated boxes are merged.
PowerCombination express_as_powers(const SlabOperator& alpha);

std::vector<std::uint64_t> h_vector_cube(std::size_t n);

std::uint64_t binomial(std::size_t n, std::size_t k);
BigInt factorial(std::size_t n);

}  // namespace hodgebox
