#pragma once

// Axis-aligned boxes: the family of polytopes strongly isomorphic to the
// unit cube, their support vectors, and the cube's volume polynomial.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hodgebox/exactlin.hpp"

namespace hodgebox {

/// Box [offset, offset + widths] in R^n. Widths may be zero (points,
/// segments); such boxes are representable but lie outside the cube family.
class BoxBody {
 public:
  explicit BoxBody(RatVector widths);
  BoxBody(RatVector widths, RatVector offset);

  static BoxBody unit_cube(std::size_t n);
  static BoxBody point(std::size_t n);

  std::size_t dim() const { return widths_.size(); }
  const RatVector& widths() const { return widths_; }
  const RatVector& offset() const { return offset_; }

  /// Nonempty interior, i.e. strongly isomorphic to the unit cube.
  bool in_cube_family() const;

  friend bool operator==(const BoxBody&, const BoxBody&) = default;

 private:
  RatVector widths_;
  RatVector offset_;
};

/// Support values in the facet normal directions +e_j and -e_j.
struct SupportVector {
  RatVector h_plus;
  RatVector h_minus;

  std::size_t dim() const { return h_plus.size(); }
  /// s_j = h_plus_j + h_minus_j.
  RatVector slab_widths() const;
};

SupportVector support_vector(const BoxBody& body);

/// Inverse of support_vector. Throws std::invalid_argument if some slab
/// width is negative.
BoxBody box_from_support(const SupportVector& h);

using WeightedBody = std::pair<BigRational, BoxBody>;

/// sum_i c_i K_i with c_i >= 0.
BoxBody minkowski_combine(std::span<const WeightedBody> terms);

BigRational volume(const BoxBody& body);

/// The cube's volume polynomial, prod_j (h_plus_j + h_minus_j).
BigRational volume_polynomial(const SupportVector& h);

}  // namespace hodgebox
