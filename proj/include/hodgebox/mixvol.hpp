#pragma once

// Mixed volumes of boxes and the inequalities built from them.
//
// For boxes the mixed volume V(K_1, ..., K_n) is perm(A) / n!, where row r
// of A holds the widths of K_r. That permanent is the reference path; the
// derivative path D_{h_{K_1}} ... D_{h_{K_n}} V / n! is an independent
// cross-check built on diffop.

#include <cstddef>
#include <span>
#include <vector>

#include "hodgebox/cubefam.hpp"
#include "hodgebox/exactlin.hpp"

namespace hodgebox {

struct TupleEntry {
  BoxBody body;
  std::size_t multiplicity = 1;
};

inline constexpr std::size_t kMaxMixedVolumeDim = 12;

/// Bodies with repetition, K_1[m_1], ..., K_r[m_r], with sum m_i = n.
class BodyTuple {
 public:
  /// Throws std::invalid_argument unless multiplicities are >= 1, sum to n
  /// and every body has dimension n.
  BodyTuple(std::size_t n, std::vector<TupleEntry> entries);

  /// Each body once.
  static BodyTuple of(std::span<const BoxBody> bodies);

  std::size_t dim() const { return n_; }
  const std::vector<TupleEntry>& entries() const { return entries_; }
  /// Bodies expanded by multiplicity.
  std::vector<BoxBody> expanded() const;

 private:
  std::size_t n_;
  std::vector<TupleEntry> entries_;
};

/// Ryser's formula. Rows may repeat: row r of the matrix is rows[r] taken
/// multiplicity[r] times.
BigRational permanent(const RatMatrix& m);

BigRational mixed_volume(const BodyTuple& t);
BigRational mixed_volume_via_derivatives(const BodyTuple& t);

/// V(K_i[k], K_j[k], C_1, ..., C_{n-2k}) helpers used by matrix builders.
BigRational mixed_volume_kk(const BoxBody& a, const BoxBody& b, std::size_t k, std::span<const BoxBody> tail);
BigRational mixed_volume_kk_via_derivatives(const BoxBody& a, const BoxBody& b, std::size_t k,
                                            std::span<const BoxBody> tail);

struct InequalityCheck {
  BigRational lhs;
  BigRational rhs;
  bool holds = false;
};

/// V(K,L,C...)^2 >= V(K,K,C...) V(L,L,C...).
InequalityCheck af_check(const BoxBody& K, const BoxBody& L, std::span<const BoxBody> tail);

/// V(K1[k],K2[l],C...)^(k+l) >= V(K1[k+l],C...)^k V(K2[k+l],C...)^l.
InequalityCheck iterated_af_check(const BoxBody& K1, const BoxBody& K2, std::size_t k, std::size_t l,
                                  std::span<const BoxBody> tail);

struct IdentityCheck {
  BigRational lhs;
  BigRational rhs;
  bool equal = false;
};

/// V(R_1, ..., R_k, tail) against
/// (1/k!) sum_{delta in {0,1}^k} (-1)^{k+|delta|} V((sum_r delta_r R_r)[k], tail).
IdentityCheck polarization_identity_check(std::span<const BoxBody> R, std::span<const TupleEntry> tail);

}  // namespace hodgebox
