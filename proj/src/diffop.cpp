#include "hodgebox/diffop.hpp"

#include <bit>
#include <stdexcept>

namespace hodgebox {

namespace {

void check_dim(std::size_t n) {
  if (n > kMaxSlabDim) throw std::invalid_argument("slab dimension exceeds supported maximum");
}

void add_term(std::map<SubsetMask, BigRational>& terms, SubsetMask key, const BigRational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

}  // namespace

std::vector<std::size_t> subset_indices(SubsetMask mask) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; mask != 0; ++j, mask >>= 1)
    if (mask & 1u) out.push_back(j);
  return out;
}

SubsetMask subset_mask(std::span<const std::size_t> indices) {
  SubsetMask m = 0;
  for (auto j : indices) {
    if (j >= kMaxSlabDim) throw std::out_of_range("subset index out of range");
    m |= SubsetMask{1} << j;
  }
  return m;
}

std::vector<SubsetMask> k_subsets(std::size_t n, std::size_t k) {
  check_dim(n);
  std::vector<SubsetMask> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(subset_mask(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

// ---- SlabOperator ----

SlabOperator::SlabOperator(std::size_t n, std::size_t k) : n_(n), k_(k) { check_dim(n); }

SlabOperator::SlabOperator(std::size_t n, std::size_t k, std::map<SubsetMask, BigRational> coefficients)
    : n_(n), k_(k) {
  check_dim(n);
  for (auto& [s, c] : coefficients) {
    if (static_cast<std::size_t>(std::popcount(s)) != k || (n < 32 && (s >> n) != 0))
      throw std::invalid_argument("SlabOperator: term is not a k-subset of [n]");
    if (sgn(c) != 0) coeffs_.emplace(s, std::move(c));
  }
}

SlabOperator SlabOperator::from_coordinates(std::size_t n, std::size_t k, const RatVector& coords) {
  const auto subsets = k_subsets(n, k);
  if (coords.size() != subsets.size())
    throw std::invalid_argument("SlabOperator: coordinate count does not match C(n, k)");
  std::map<SubsetMask, BigRational> terms;
  for (std::size_t i = 0; i < subsets.size(); ++i) add_term(terms, subsets[i], coords[i]);
  return SlabOperator(n, k, std::move(terms));
}

BigRational SlabOperator::coefficient(SubsetMask s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? BigRational(0) : it->second;
}

RatVector SlabOperator::coordinates() const {
  RatVector out;
  for (auto s : k_subsets(n_, k_)) out.push_back(coefficient(s));
  return out;
}

SlabOperator SlabOperator::operator+(const SlabOperator& other) const {
  if (n_ != other.n_ || k_ != other.k_) throw std::invalid_argument("SlabOperator: sum of mismatched operators");
  auto terms = coeffs_;
  for (const auto& [s, c] : other.coeffs_) add_term(terms, s, c);
  return SlabOperator(n_, k_, std::move(terms));
}

SlabOperator SlabOperator::scaled(const BigRational& c) const {
  std::map<SubsetMask, BigRational> terms;
  for (const auto& [s, v] : coeffs_) add_term(terms, s, v * c);
  return SlabOperator(n_, k_, std::move(terms));
}

SlabOperator SlabOperator::operator*(const SlabOperator& other) const {
  if (n_ != other.n_) throw std::invalid_argument("SlabOperator: product of mismatched dimensions");
  std::map<SubsetMask, BigRational> terms;
  for (const auto& [s, a] : coeffs_)
    for (const auto& [t, b] : other.coeffs_)
      if ((s & t) == 0) add_term(terms, s | t, a * b);
  return SlabOperator(n_, k_ + other.k_, std::move(terms));
}

// ---- SlabPolynomial ----

SlabPolynomial::SlabPolynomial(std::size_t n) : n_(n) { check_dim(n); }

SlabPolynomial::SlabPolynomial(std::size_t n, std::map<SubsetMask, BigRational> terms) : n_(n) {
  check_dim(n);
  for (auto& [s, c] : terms) {
    if (n < 32 && (s >> n) != 0) throw std::invalid_argument("SlabPolynomial: variable out of range");
    if (sgn(c) != 0) terms_.emplace(s, std::move(c));
  }
}

SlabPolynomial SlabPolynomial::volume(std::size_t n) {
  check_dim(n);
  const SubsetMask full = n == 0 ? 0 : static_cast<SubsetMask>((std::uint64_t{1} << n) - 1);
  return SlabPolynomial(n, {{full, BigRational(1)}});
}

BigRational SlabPolynomial::coefficient(SubsetMask monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? BigRational(0) : it->second;
}

BigRational SlabPolynomial::evaluate(const RatVector& s) const {
  if (s.size() != n_) throw std::invalid_argument("SlabPolynomial: evaluation point has wrong dimension");
  BigRational total = 0;
  for (const auto& [mask, c] : terms_) {
    BigRational term = c;
    for (auto j : subset_indices(mask)) term *= s[j];
    total += term;
  }
  return total;
}

// ---- operators on V ----

SlabOperator op_from_box(const BoxBody& body, std::size_t k) {
  const std::size_t n = body.dim();
  if (k > n) return SlabOperator(n, k);
  const BigRational kfact(factorial(k));
  std::map<SubsetMask, BigRational> terms;
  for (auto s : k_subsets(n, k)) {
    BigRational c = kfact;
    for (auto j : subset_indices(s)) c *= body.widths()[j];
    add_term(terms, s, c);
  }
  return SlabOperator(n, k, std::move(terms));
}

SlabPolynomial apply(const SlabOperator& op, const SlabPolynomial& p) {
  if (op.dim() != p.dim()) throw std::invalid_argument("apply: dimension mismatch");
  std::map<SubsetMask, BigRational> out;
  for (const auto& [s, a] : op.coefficients())
    for (const auto& [u, b] : p.terms())
      if ((s & u) == s) add_term(out, u & ~s, a * b);
  return SlabPolynomial(p.dim(), std::move(out));
}

SlabPolynomial derivative_image(std::size_t n, std::span<const BoxBody> bodies) {
  SlabPolynomial p = SlabPolynomial::volume(n);
  for (const auto& b : bodies) {
    if (b.dim() != n) throw std::invalid_argument("derivative_image: dimension mismatch");
    p = apply(op_from_box(b, 1), p);
  }
  return p;
}

namespace {

void require_family(const BoxBody& b, std::size_t n, const char* what) {
  if (b.dim() != n) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  if (!b.in_cube_family()) throw std::invalid_argument(std::string(what) + ": degenerate body");
}

// Linear map alpha -> alpha D_L D_C... V, as a matrix from k_subsets(n,k)
// coordinates to (k-1)-subset monomial coefficients.
RatMatrix primitivity_system(std::size_t n, std::size_t k, const BoxBody& L, std::span<const BoxBody> tail) {
  std::vector<BoxBody> bodies{L};
  bodies.insert(bodies.end(), tail.begin(), tail.end());
  const SlabPolynomial p = derivative_image(n, bodies);
  const auto cols = k_subsets(n, k);
  const auto rows = k_subsets(n, k - 1);
  return RatMatrix::generate(rows.size(), cols.size(), [&](std::size_t i, std::size_t j) {
    return (rows[i] & cols[j]) == 0 ? p.coefficient(rows[i] | cols[j]) : BigRational(0);
  });
}

void check_primitive_args(std::size_t k, const BoxBody& L, std::span<const BoxBody> tail) {
  const std::size_t n = L.dim();
  if (k == 0) throw std::invalid_argument("primitive space: degree must be at least 1");
  if (2 * k > n) throw std::invalid_argument("primitive space: requires 2k <= n");
  if (tail.size() != n - 2 * k) throw std::invalid_argument("primitive space: tail must hold n - 2k bodies");
  require_family(L, n, "primitive space");
  for (const auto& c : tail) require_family(c, n, "primitive space");
}

}  // namespace

std::vector<SlabOperator> primitive_space_basis(std::size_t k, const BoxBody& L, std::span<const BoxBody> tail) {
  check_primitive_args(k, L, tail);
  const std::size_t n = L.dim();
  std::vector<SlabOperator> basis;
  for (const auto& v : nullspace_basis(primitivity_system(n, k, L, tail)))
    basis.push_back(SlabOperator::from_coordinates(n, k, primitive_integer_vector(v)));
  return basis;
}

bool is_primitive(const SlabOperator& alpha, const BoxBody& L, std::span<const BoxBody> tail) {
  check_primitive_args(alpha.degree(), L, tail);
  if (alpha.dim() != L.dim()) throw std::invalid_argument("is_primitive: dimension mismatch");
  std::vector<BoxBody> bodies{L};
  bodies.insert(bodies.end(), tail.begin(), tail.end());
  return apply(alpha, derivative_image(L.dim(), bodies)).is_zero();
}

BigRational hr_form(const SlabOperator& a, const SlabOperator& b, std::span<const BoxBody> tail) {
  if (a.degree() != b.degree()) throw std::invalid_argument("hr_form: degree mismatch");
  if (a.dim() != b.dim()) throw std::invalid_argument("hr_form: dimension mismatch");
  const std::size_t n = a.dim(), k = a.degree();
  if (2 * k > n) throw std::invalid_argument("hr_form: requires 2k <= n");
  if (tail.size() != n - 2 * k) throw std::invalid_argument("hr_form: tail must hold n - 2k bodies");
  const SlabPolynomial p = derivative_image(n, tail);
  return apply(a, apply(b, p)).coefficient(0);
}

RatMatrix hr_pairing_matrix(std::size_t n, std::size_t k, std::span<const BoxBody> tail) {
  if (2 * k > n || tail.size() != n - 2 * k)
    throw std::invalid_argument("hr_pairing_matrix: requires 2k + |tail| = n");
  const SlabPolynomial p = derivative_image(n, tail);
  const auto subsets = k_subsets(n, k);
  return RatMatrix::generate(subsets.size(), subsets.size(), [&](std::size_t i, std::size_t j) {
    return (subsets[i] & subsets[j]) == 0 ? p.coefficient(subsets[i] | subsets[j]) : BigRational(0);
  });
}

HodgeRiemannCheck hr_check(const SlabOperator& alpha, const BoxBody& L, std::span<const BoxBody> tail) {
  if (!is_primitive(alpha, L, tail)) throw std::invalid_argument("hr_check: operator is not primitive");
  HodgeRiemannCheck out;
  out.value = hr_form(alpha, alpha, tail);
  const int parity = alpha.degree() % 2 == 0 ? 1 : -1;
  out.sign_ok = parity * sgn(out.value) >= 0;
  const bool kills_v = apply(alpha, SlabPolynomial::volume(alpha.dim())).is_zero();
  out.equality_iff_zero_ok = (sgn(out.value) == 0) == kills_v;
  return out;
}

SlabOperator PowerCombination::as_operator() const {
  SlabOperator acc(n, k);
  for (const auto& [x, body] : terms) acc = acc + op_from_box(body, k).scaled(x);
  return acc;
}

std::vector<BigRational> shift_values(std::size_t k) {
  std::vector<BigRational> t;
  for (std::size_t i = 1; i <= k + 1; ++i) t.emplace_back(static_cast<unsigned long>(i));
  return t;
}

std::vector<BigRational> shift_weights(std::size_t k) {
  // Lagrange basis at nodes t evaluated at 0: sum_t w_t f(t) = f(0) for
  // deg f <= k, which isolates the t^0 term of (D_B + t D_cube)^k.
  const auto t = shift_values(k);
  std::vector<BigRational> w;
  for (std::size_t i = 0; i < t.size(); ++i) {
    BigRational l = 1;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (j != i) l *= (0 - t[j]) / (t[i] - t[j]);
    w.push_back(l);
  }
  return w;
}

PowerCombination express_as_powers(const SlabOperator& alpha) {
  const std::size_t n = alpha.dim(), k = alpha.degree();
  if (k == 0) throw std::invalid_argument("express_as_powers: degree must be at least 1");
  PowerCombination out{n, k, {}};
  if (alpha.is_zero()) return out;

  const auto shifts = shift_values(k);
  const auto weights = shift_weights(k);
  const BigRational inv_kfact = BigRational(1) / BigRational(factorial(k));

  // Keyed by widths, so coinciding boxes merge.
  std::map<RatVector, BigRational> merged;
  for (const auto& [s, c] : alpha.coefficients()) {
    // Nonempty subsets T of S.
    for (SubsetMask t = s; t != 0; t = (t - 1) & s) {
      const bool odd = (k + std::popcount(t)) % 2 == 1;
      const BigRational pol = (odd ? -c : c) * inv_kfact;
      for (std::size_t i = 0; i < shifts.size(); ++i) {
        RatVector widths(n, shifts[i]);
        for (auto j : subset_indices(t)) widths[j] += 1;
        auto [it, fresh] = merged.try_emplace(std::move(widths), 0);
        it->second += pol * weights[i];
      }
    }
  }
  for (const auto& [widths, x] : merged)
    if (sgn(x) != 0) out.terms.emplace_back(x, BoxBody(widths));
  return out;
}

std::vector<std::uint64_t> h_vector_cube(std::size_t n) {
  if (n == 0) throw std::invalid_argument("h_vector_cube: n must be positive");
  std::vector<std::uint64_t> h;
  for (std::size_t k = 0; k <= n; ++k) h.push_back(binomial(n, k));
  return h;
}

}  // namespace hodgebox
