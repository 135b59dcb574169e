#include "hodgebox/mixvol.hpp"

#include <bit>
#include <map>
#include <stdexcept>

#include "hodgebox/diffop.hpp"

namespace hodgebox {

BodyTuple::BodyTuple(std::size_t n, std::vector<TupleEntry> entries) : n_(n), entries_(std::move(entries)) {
  std::size_t total = 0;
  for (const auto& e : entries_) {
    if (e.multiplicity == 0) throw std::invalid_argument("BodyTuple: multiplicity must be at least 1");
    if (e.body.dim() != n_) throw std::invalid_argument("BodyTuple: body dimension differs from n");
    total += e.multiplicity;
  }
  if (total != n_) throw std::invalid_argument("BodyTuple: multiplicities must sum to n");
}

BodyTuple BodyTuple::of(std::span<const BoxBody> bodies) {
  std::vector<TupleEntry> entries;
  for (const auto& b : bodies) entries.push_back({b, 1});
  return BodyTuple(bodies.empty() ? 0 : bodies.front().dim(), std::move(entries));
}

std::vector<BoxBody> BodyTuple::expanded() const {
  std::vector<BoxBody> out;
  for (const auto& e : entries_)
    for (std::size_t i = 0; i < e.multiplicity; ++i) out.push_back(e.body);
  return out;
}

namespace {

// Ryser over integer rows with multiplicities, Gray-code column order:
// perm = (-1)^n sum_{S} (-1)^{|S|} prod_r (rowsum_r(S))^{mult_r}.
BigInt ryser_int(const std::vector<std::vector<BigInt>>& rows, const std::vector<std::size_t>& mult,
                 std::size_t n) {
  const std::size_t r = rows.size();
  std::vector<BigInt> sums(r, 0);
  BigInt total = 0, term, pw;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < count; ++i) {
    const std::uint64_t next = i ^ (i >> 1);
    const std::size_t col = static_cast<std::size_t>(std::countr_zero(next ^ gray));
    const bool added = (next >> col) & 1u;
    gray = next;
    for (std::size_t a = 0; a < r; ++a) {
      if (added) sums[a] += rows[a][col];
      else sums[a] -= rows[a][col];
    }
    term = 1;
    for (std::size_t a = 0; a < r && term != 0; ++a) {
      mpz_pow_ui(pw.get_mpz_t(), sums[a].get_mpz_t(), mult[a]);
      term *= pw;
    }
    if (std::popcount(gray) % 2 == 1) total -= term;
    else total += term;
  }
  return n % 2 == 1 ? BigInt(-total) : total;
}

BigRational permanent_grouped(const std::vector<const RatVector*>& rows, const std::vector<std::size_t>& mult,
                              std::size_t n) {
  if (n == 0) return 1;
  if (n > kMaxMixedVolumeDim + 8) throw std::invalid_argument("permanent: dimension too large");
  std::vector<std::vector<BigInt>> ints;
  BigInt scale = 1, pw;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    BigInt l = 1;
    for (const auto& v : *rows[a]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::vector<BigInt> row;
    for (const auto& v : *rows[a]) row.push_back(v.get_num() * (l / v.get_den()));
    ints.push_back(std::move(row));
    mpz_pow_ui(pw.get_mpz_t(), l.get_mpz_t(), mult[a]);
    scale *= pw;
  }
  BigRational out(ryser_int(ints, mult, n), scale);
  out.canonicalize();
  return out;
}

void check_tuple_dim(std::size_t n) {
  if (n == 0 || n > kMaxMixedVolumeDim)
    throw std::invalid_argument("mixed volume: dimension outside supported range 1..12");
}

}  // namespace

BigRational permanent(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("permanent: matrix is not square");
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
  std::vector<const RatVector*> ptrs;
  for (const auto& r : rows) ptrs.push_back(&r);
  return permanent_grouped(ptrs, std::vector<std::size_t>(rows.size(), 1), m.rows());
}

BigRational mixed_volume(const BodyTuple& t) {
  check_tuple_dim(t.dim());
  std::vector<const RatVector*> rows;
  std::vector<std::size_t> mult;
  for (const auto& e : t.entries()) {
    rows.push_back(&e.body.widths());
    mult.push_back(e.multiplicity);
  }
  return permanent_grouped(rows, mult, t.dim()) / BigRational(factorial(t.dim()));
}

BigRational mixed_volume_via_derivatives(const BodyTuple& t) {
  check_tuple_dim(t.dim());
  SlabPolynomial p = SlabPolynomial::volume(t.dim());
  for (const auto& e : t.entries()) p = apply(op_from_box(e.body, e.multiplicity), p);
  return p.coefficient(0) / BigRational(factorial(t.dim()));
}

namespace {

BodyTuple kk_tuple(const BoxBody& a, const BoxBody& b, std::size_t k, std::span<const BoxBody> tail) {
  const std::size_t n = a.dim();
  if (k == 0 || 2 * k + tail.size() != n) throw std::invalid_argument("mixed volume: requires 2k + |tail| = n");
  std::vector<TupleEntry> entries;
  if (a == b) {
    entries.push_back({a, 2 * k});
  } else {
    entries.push_back({a, k});
    entries.push_back({b, k});
  }
  for (const auto& c : tail) entries.push_back({c, 1});
  return BodyTuple(n, std::move(entries));
}

}  // namespace

BigRational mixed_volume_kk(const BoxBody& a, const BoxBody& b, std::size_t k, std::span<const BoxBody> tail) {
  return mixed_volume(kk_tuple(a, b, k, tail));
}

BigRational mixed_volume_kk_via_derivatives(const BoxBody& a, const BoxBody& b, std::size_t k,
                                            std::span<const BoxBody> tail) {
  return mixed_volume_via_derivatives(kk_tuple(a, b, k, tail));
}

InequalityCheck af_check(const BoxBody& K, const BoxBody& L, std::span<const BoxBody> tail) {
  const std::size_t n = K.dim();
  if (n < 2) throw std::invalid_argument("af_check: requires n >= 2");
  if (L.dim() != n) throw std::invalid_argument("af_check: dimension mismatch");
  if (tail.size() != n - 2) throw std::invalid_argument("af_check: expects n - 2 further bodies");
  const BigRational kl = mixed_volume_kk(K, L, 1, tail);
  InequalityCheck out;
  out.lhs = kl * kl;
  out.rhs = mixed_volume_kk(K, K, 1, tail) * mixed_volume_kk(L, L, 1, tail);
  out.holds = out.lhs >= out.rhs;
  return out;
}

namespace {

BigRational rational_pow(const BigRational& base, std::size_t e) {
  BigRational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return out;
}

}  // namespace

InequalityCheck iterated_af_check(const BoxBody& K1, const BoxBody& K2, std::size_t k, std::size_t l,
                                  std::span<const BoxBody> tail) {
  const std::size_t n = K1.dim();
  if (k == 0 || l == 0 || k + l > n) throw std::invalid_argument("iterated_af_check: requires k, l >= 1 and k + l <= n");
  if (K2.dim() != n) throw std::invalid_argument("iterated_af_check: dimension mismatch");
  if (tail.size() != n - k - l) throw std::invalid_argument("iterated_af_check: expects n - k - l further bodies");

  auto tuple = [&](std::vector<TupleEntry> head) {
    for (const auto& c : tail) head.push_back({c, 1});
    return BodyTuple(n, std::move(head));
  };
  const BigRational mixed = mixed_volume(tuple({{K1, k}, {K2, l}}));
  const BigRational pure1 = mixed_volume(tuple({{K1, k + l}}));
  const BigRational pure2 = mixed_volume(tuple({{K2, k + l}}));
  InequalityCheck out;
  out.lhs = rational_pow(mixed, k + l);
  out.rhs = rational_pow(pure1, k) * rational_pow(pure2, l);
  out.holds = out.lhs >= out.rhs;
  return out;
}

IdentityCheck polarization_identity_check(std::span<const BoxBody> R, std::span<const TupleEntry> tail) {
  const std::size_t k = R.size();
  if (k == 0) throw std::invalid_argument("polarization_identity_check: needs at least one body");
  const std::size_t n = R.front().dim();
  std::size_t slots = k;
  for (const auto& e : tail) slots += e.multiplicity;
  if (slots != n) throw std::invalid_argument("polarization_identity_check: body counts do not sum to n");
  if (k >= 64) throw std::invalid_argument("polarization_identity_check: too many bodies");

  std::vector<TupleEntry> direct;
  for (const auto& r : R) direct.push_back({r, 1});
  direct.insert(direct.end(), tail.begin(), tail.end());

  IdentityCheck out;
  out.lhs = mixed_volume(BodyTuple(n, direct));

  BigRational sum = 0;
  for (std::uint64_t delta = 1; delta < (std::uint64_t{1} << k); ++delta) {
    std::vector<WeightedBody> parts;
    for (std::size_t r = 0; r < k; ++r)
      if ((delta >> r) & 1u) parts.emplace_back(BigRational(1), R[r]);
    std::vector<TupleEntry> entries{{minkowski_combine(parts), k}};
    entries.insert(entries.end(), tail.begin(), tail.end());
    const BigRational v = mixed_volume(BodyTuple(n, std::move(entries)));
    if ((k + std::popcount(delta)) % 2 == 1) sum -= v;
    else sum += v;
  }
  out.rhs = sum / BigRational(factorial(k));
  out.equal = out.lhs == out.rhs;
  return out;
}

}  // namespace hodgebox
