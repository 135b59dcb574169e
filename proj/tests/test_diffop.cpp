#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hodgebox/diffop.hpp"
#include "oracles.hpp"

using namespace hodgebox;

namespace {

SubsetMask mask(std::initializer_list<std::size_t> idx) {
  std::vector<std::size_t> v(idx);
  return subset_mask(v);
}

// alpha = d1 d2 + d3 d4 - d1 d3 - d2 d4, written 0-based.
SlabOperator example_alpha() {
  return SlabOperator(4, 2, {{mask({0, 1}), 1}, {mask({2, 3}), 1}, {mask({0, 2}), -1}, {mask({1, 3}), -1}});
}

}  // namespace

TEST_CASE("subsets") {
  CHECK(k_subsets(4, 2) == std::vector<SubsetMask>{mask({0, 1}), mask({0, 2}), mask({0, 3}), mask({1, 2}),
                                                   mask({1, 3}), mask({2, 3})});
  CHECK(k_subsets(5, 0) == std::vector<SubsetMask>{0});
  CHECK(subset_indices(mask({3, 1})) == std::vector<std::size_t>{1, 3});
}

TEST_CASE("op_from_box coefficients") {
  auto op = op_from_box(BoxBody({2, 3}), 2);
  CHECK(op.coefficient(mask({0, 1})) == 12);  // 2! * 2 * 3
  auto d = op_from_box(BoxBody({1, 1, 1}), 1);
  CHECK(d.coordinates() == RatVector{1, 1, 1});
  auto big = op_from_box(BoxBody({1, 1}), 3);
  CHECK(big.is_zero());
  CHECK(big.exceeds_dimension());
}

TEST_CASE("apply examples") {
  auto v2 = SlabPolynomial::volume(2);
  auto img = apply(op_from_box(BoxBody::unit_cube(2), 1), v2);
  CHECK(img.coefficient(mask({0})) == 1);
  CHECK(img.coefficient(mask({1})) == 1);
  CHECK(img.terms().size() == 2);

  // alpha applied to (sum_j d_j) V vanishes: primitivity at n = 4.
  auto alpha = example_alpha();
  auto sum_d = op_from_box(BoxBody::unit_cube(4), 1);
  CHECK(apply(alpha * sum_d, SlabPolynomial::volume(4)).is_zero());
  CHECK(is_primitive(alpha, BoxBody::unit_cube(4), {}));
}

TEST_CASE("apply agrees with variable-by-variable differentiation") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + t % 5;
    std::size_t k = 1 + t % n;
    std::map<SubsetMask, BigRational> c;
    for (auto s : k_subsets(n, k))
      if (int v = coef(rng); v != 0) c[s] = v;
    SlabOperator op(n, k, c);
    std::map<SubsetMask, BigRational> pt;
    for (SubsetMask s = 0; s < (SubsetMask{1} << n); ++s)
      if (int v = coef(rng); v != 0) pt[s] = v;
    SlabPolynomial p(n, pt);
    CHECK(apply(op, p) == oracle::naive_apply(op, p));
  }
}

TEST_CASE("Hodge-Riemann values") {
  auto alpha = example_alpha();
  CHECK(hr_form(alpha, alpha, {}) == 4);
  auto check = hr_check(alpha, BoxBody::unit_cube(4), {});
  CHECK(check.value == 4);
  CHECK(check.sign_ok);
  CHECK(check.equality_iff_zero_ok);

  // (d1 - d2)^2 s1 s2 = -2; primitive for L = cube in R^2.
  SlabOperator beta(2, 1, {{mask({0}), 1}, {mask({1}), -1}});
  CHECK(hr_form(beta, beta, {}) == -2);
  auto c1 = hr_check(beta, BoxBody::unit_cube(2), {});
  CHECK(c1.sign_ok);

  // not primitive
  SlabOperator gamma(2, 1, {{mask({0}), 1}});
  CHECK_THROWS_AS(hr_check(gamma, BoxBody::unit_cube(2), {}), std::invalid_argument);
}

TEST_CASE("primitive space of the cube") {
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t k = 1; 2 * k <= n; ++k) {
      std::vector<BoxBody> tail(n - 2 * k, BoxBody::unit_cube(n));
      auto basis = primitive_space_basis(k, BoxBody::unit_cube(n), tail);
      CHECK(basis.size() == binomial(n, k) - binomial(n, k - 1));
      for (const auto& a : basis) CHECK(is_primitive(a, BoxBody::unit_cube(n), tail));
      CHECK(rank(hr_pairing_matrix(n, k, tail)) == binomial(n, k));
    }
  CHECK_THROWS_AS(primitive_space_basis(2, BoxBody::unit_cube(3), {}), std::invalid_argument);
}

TEST_CASE("primitive space with the tail absent from the dimension count") {
  std::vector<BoxBody> tail{BoxBody::unit_cube(5)};
  CHECK_THROWS_AS(primitive_space_basis(2, BoxBody::unit_cube(5), {}), std::invalid_argument);
  CHECK_NOTHROW(primitive_space_basis(2, BoxBody::unit_cube(5), tail));
}

TEST_CASE("h-vector and counting helpers") {
  CHECK(h_vector_cube(4) == std::vector<std::uint64_t>{1, 4, 6, 4, 1});
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(3, 5) == 0);
  CHECK(factorial(5) == 120);
}

TEST_CASE("shift weights reproduce the zero shift") {
  for (std::size_t k = 1; k <= 5; ++k) {
    auto t = shift_values(k);
    auto w = shift_weights(k);
    REQUIRE(t.size() == w.size());
    // sum_t w_t (c + t)^k == c^k as a polynomial in c: test on a few c.
    for (int c = -3; c <= 3; ++c) {
      BigRational lhs = 0, rhs = 1;
      for (std::size_t i = 0; i < t.size(); ++i) {
        BigRational p = 1;
        for (std::size_t e = 0; e < k; ++e) p *= (c + t[i]);
        lhs += w[i] * p;
      }
      for (std::size_t e = 0; e < k; ++e) rhs *= c;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("express_as_powers round trip") {
  SlabOperator d1(2, 1, {{mask({0}), 1}});
  auto pc = express_as_powers(d1);
  CHECK(pc.as_operator() == d1);
  for (const auto& [c, body] : pc.terms) CHECK(body.in_cube_family());

  auto alpha = example_alpha();
  auto pa = express_as_powers(alpha);
  CHECK(pa.as_operator() == alpha);
  for (const auto& [c, body] : pa.terms) CHECK(body.in_cube_family());
}
