#include "hodgebox/cubefam.hpp"

#include <algorithm>
#include <stdexcept>

namespace hodgebox {

BoxBody::BoxBody(RatVector widths) : BoxBody(widths, RatVector(widths.size())) {}

BoxBody::BoxBody(RatVector widths, RatVector offset)
    : widths_(std::move(widths)), offset_(std::move(offset)) {
  if (widths_.size() != offset_.size())
    throw std::invalid_argument("BoxBody: widths and offset differ in dimension");
  if (std::any_of(widths_.begin(), widths_.end(), [](const BigRational& w) { return sgn(w) < 0; }))
    throw std::invalid_argument("BoxBody: negative width");
}

BoxBody BoxBody::unit_cube(std::size_t n) { return BoxBody(RatVector(n, BigRational(1))); }

BoxBody BoxBody::point(std::size_t n) { return BoxBody(RatVector(n)); }

bool BoxBody::in_cube_family() const {
  return !widths_.empty() &&
         std::all_of(widths_.begin(), widths_.end(), [](const BigRational& w) { return sgn(w) > 0; });
}

RatVector SupportVector::slab_widths() const {
  RatVector s(h_plus.size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = h_plus[j] + h_minus[j];
  return s;
}

SupportVector support_vector(const BoxBody& body) {
  SupportVector h;
  h.h_plus.resize(body.dim());
  h.h_minus.resize(body.dim());
  for (std::size_t j = 0; j < body.dim(); ++j) {
    h.h_plus[j] = body.offset()[j] + body.widths()[j];
    h.h_minus[j] = -body.offset()[j];
  }
  return h;
}

BoxBody box_from_support(const SupportVector& h) {
  if (h.h_plus.size() != h.h_minus.size())
    throw std::invalid_argument("box_from_support: h_plus and h_minus differ in dimension");
  RatVector widths = h.slab_widths();
  RatVector offset(h.dim());
  for (std::size_t j = 0; j < h.dim(); ++j) {
    if (sgn(widths[j]) < 0) throw std::invalid_argument("box_from_support: negative slab width");
    offset[j] = -h.h_minus[j];
  }
  return BoxBody(std::move(widths), std::move(offset));
}

BoxBody minkowski_combine(std::span<const WeightedBody> terms) {
  if (terms.empty()) throw std::invalid_argument("minkowski_combine: no terms");
  const std::size_t n = terms.front().second.dim();
  RatVector widths(n), offset(n);
  for (const auto& [c, body] : terms) {
    if (body.dim() != n) throw std::invalid_argument("minkowski_combine: dimension mismatch");
    if (sgn(c) < 0) throw std::invalid_argument("minkowski_combine: negative coefficient");
    for (std::size_t j = 0; j < n; ++j) {
      widths[j] += c * body.widths()[j];
      offset[j] += c * body.offset()[j];
    }
  }
  return BoxBody(std::move(widths), std::move(offset));
}

BigRational volume(const BoxBody& body) {
  BigRational v = 1;
  for (const auto& w : body.widths()) v *= w;
  return v;
}

BigRational volume_polynomial(const SupportVector& h) {
  BigRational v = 1;
  for (const auto& s : h.slab_widths()) v *= s;
  return v;
}

}  // namespace hodgebox
