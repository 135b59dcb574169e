#pragma once

// Hyperbolic matrices: symmetric matrices with exactly one positive
// eigenvalue. For symmetric positive matrices this is equivalent to
// (-1)^|I| det M_I <= 0 on every principal submatrix, and to the
// Alexandrov-Fenchel-type form inequality on nonnegative vectors.

#include <cstddef>
#include <optional>
#include <vector>

#include "hodgebox/exactlin.hpp"

namespace hodgebox {

/// Principal subset I (ascending, 0-based) with (-1)^|I| det M_I > 0.
struct Violation {
  std::vector<std::size_t> subset;
  BigRational det;

  int parity_sign() const { return subset.size() % 2 == 0 ? 1 : -1; }
  /// (-1)^|I| * det > 0.
  bool is_violation() const { return parity_sign() * sgn(det) > 0; }
  /// Recomputes det M_I and checks the sign.
  bool verifies_against(const RatMatrix& m) const;
};

inline constexpr std::size_t kMaxExhaustiveDim = 22;

/// Throws std::invalid_argument unless m is symmetric with positive entries.
bool is_hyperbolic(const RatMatrix& m);

/// First violating principal subset: smallest |I| first, then lexicographic.
/// std::nullopt iff m is hyperbolic. Throws std::length_error above
/// kMaxExhaustiveDim; shrink with greedy_core first.
std::optional<Violation> sylvester_violation(const RatMatrix& m, std::size_t threads = 1);

/// <x,My>^2 >= <x,Mx><y,My> for x, y >= 0.
bool af_form_check(const RatMatrix& m, const RatVector& x, const RatVector& y);

struct EqualityWitness {
  RatVector x;
  RatVector y;
  BigRational x_m_y;
  BigRational x_m_x;
  BigRational y_m_y;

  /// x, y > 0, linearly independent, <x,My>^2 = <x,Mx><y,My>.
  bool verifies() const;
};

/// For singular nonzero m: x = z + b y with z in ker m, y the all-ones vector
/// (bumped in its first entry when z is parallel to it), b large enough for
/// x > 0. Throws std::invalid_argument if det m != 0 or m = 0.
EqualityWitness equality_witness(const RatMatrix& m);

/// Index subset J such that M_J still has at least two positive eigenvalues
/// and no single index can be dropped without losing that. Every accepted
/// removal is checked by exact inertia; a floating-point eigendecomposition
/// only decides the order in which removals are tried.
/// Throws std::invalid_argument if m is hyperbolic.
std::vector<std::size_t> greedy_core(const RatMatrix& m);

}  // namespace hodgebox
