#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodgebox/fedotov.hpp"
#include "hodgebox/mixvol.hpp"
#include "hodgebox/serialize.hpp"

using namespace hodgebox;

TEST_CASE("homothetic pair gives a rank-one matrix") {
  BoxBody k({1, 3});
  BoxBody k2({2, 6});
  auto fm = build_matrix({k, k2}, 1, {});
  const BigRational v = volume(k);
  CHECK(fm.entries == RatMatrix::from_rows({{v, 2 * v}, {2 * v, 4 * v}}));
  CHECK(det(fm.entries) == 0);
  auto rep = shephard_verify(fm);
  CHECK(rep.passed);
  CHECK(rep.subsets_checked == 3);
}

TEST_CASE("cubes give the all-ones matrix") {
  std::vector<BoxBody> cubes(3, BoxBody::unit_cube(4));
  auto fm = build_matrix(cubes, 2, {});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(fm.entries(i, j) == 1);
}

TEST_CASE("matrix paths agree") {
  std::vector<BoxBody> bodies{BoxBody({1, 2, 3, 1, 1}), BoxBody({2, 1, 1, 1, 3}), BoxBody({1, 1, 2, 3, 1})};
  std::vector<BoxBody> tail{BoxBody({1, 2, 1, 2, 1})};
  CHECK(mixed_volume_matrix(bodies, 2, tail, MixedVolumePath::permanent, 1) ==
        mixed_volume_matrix(bodies, 2, tail, MixedVolumePath::derivatives, 3));
  CHECK_THROWS_AS(build_matrix(bodies, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_matrix({}, 1, {}), std::invalid_argument);
}

TEST_CASE("k = 2 construction in R^4") {
  auto base = build_k2_base(4);
  CHECK(base.x_m_y == 0);
  CHECK(base.x_m_x > 0);
  CHECK(base.hr_value == 4);
  CHECK(base.x_m_x == base.hr_value / BigRational(factorial(4)));
  CHECK(base.powers.as_operator() == base.alpha);

  auto cert = construct_counterexample_k2(4);
  CHECK(cert.kind == "hodge-k2");
  CHECK(cert.violation.is_violation());
  CHECK(cert.violation.verifies_against(cert.matrix));
  auto vr = verify_certificate(cert);
  CHECK_MESSAGE(vr.ok, vr.reason);
}

TEST_CASE("reduction at k = 2 reproduces the base") {
  auto base = build_k2_base(4);
  auto r = build_reduction(base, 2);
  auto collapsed = collapse_reduction(r);
  CHECK(collapsed == base.matrix);
  CHECK(bilinear(r.matrix, r.x, r.y) == 0);
  CHECK(bilinear(r.matrix, r.x, r.x) == base.x_m_x);
  CHECK(delta_string(0b100, 3) == "100");
}

TEST_CASE("reduction to k = 3 in R^6") {
  auto base = build_k2_base(6);
  auto r = build_reduction(base, 3);
  CHECK(r.matrix.rows() == base.bodies.size() * 7);
  CHECK(collapse_reduction(r) == base.matrix);
  CHECK(bilinear(r.matrix, r.x, r.y) == 0);
  CHECK(bilinear(r.matrix, r.x, r.x) == base.x_m_x);
  CHECK_THROWS(build_reduction(base, 4));

  auto cert = reduce_to_general_k(base, 3, {2, kMaxExhaustiveDim});
  CHECK(cert.kind == "reduction");
  auto vr = verify_certificate(cert, 2);
  CHECK_MESSAGE(vr.ok, vr.reason);
}

TEST_CASE("verifier rejects tampering") {
  auto cert = construct_counterexample(4, 2);
  REQUIRE(verify_certificate(cert).ok);

  SUBCASE("perturbed matrix entry") {
    auto bad = cert;
    auto data = bad.matrix.data();
    data[1] += BigRational(1, 1000);
    data[bad.matrix.cols()] += BigRational(1, 1000);  // keep it symmetric
    bad.matrix = RatMatrix(bad.matrix.rows(), bad.matrix.cols(), data);
    CHECK_FALSE(verify_certificate(bad).ok);
  }
  SUBCASE("subset that does not violate") {
    auto bad = cert;
    bad.violation = Violation{{0}, bad.matrix(0, 0)};
    CHECK_FALSE(verify_certificate(bad).ok);
  }
  SUBCASE("wrong determinant") {
    auto bad = cert;
    bad.violation.det += 1;
    CHECK_FALSE(verify_certificate(bad).ok);
  }
  SUBCASE("x no longer orthogonal") {
    auto bad = cert;
    bad.x[0] += 1;
    CHECK_FALSE(verify_certificate(bad).ok);
  }
  SUBCASE("swapped body") {
    auto bad = cert;
    bad.bodies[0].body = BoxBody::unit_cube(4);
    CHECK_FALSE(verify_certificate(bad).ok);
  }
}

TEST_CASE("random search") {
  SearchOptions none;
  none.trials = 0;
  auto r0 = random_search(none);
  CHECK_FALSE(r0.certificate);
  CHECK(r0.stats.trials == 0);

  SearchOptions k1;
  k1.n = 4;
  k1.k = 1;
  k1.m = 4;
  k1.trials = 60;
  k1.seed = 3;
  auto r1 = random_search(k1);
  CHECK_FALSE(r1.certificate);
  CHECK(r1.stats.non_hyperbolic == 0);

  SearchOptions k2;
  k2.n = 4;
  k2.k = 2;
  k2.m = 6;
  k2.trials = 100;
  k2.seed = 7;
  auto a = random_search(k2);
  k2.threads = 3;
  auto b = random_search(k2);
  CHECK(a.stats.non_hyperbolic == b.stats.non_hyperbolic);
  CHECK(a.stats.first_hit == b.stats.first_hit);
  REQUIRE(a.certificate.has_value() == b.certificate.has_value());
  if (a.certificate) {
    CHECK(dump_canonical(certificate_to_json(*a.certificate)) == dump_canonical(certificate_to_json(*b.certificate)));
    CHECK(verify_certificate(*a.certificate).ok);
  }
}

TEST_CASE("Shephard verification on a small family") {
  std::vector<BoxBody> bodies{BoxBody({1, 2, 1}), BoxBody({3, 1, 1}), BoxBody({1, 1, 4}), BoxBody({2, 2, 1})};
  auto fm = build_matrix(bodies, 1, {BoxBody({1, 3, 2})});
  auto rep = shephard_verify(fm);
  CHECK(rep.passed);
  CHECK(rep.subsets_checked == 15);
  CHECK_FALSE(rep.violation);
  CHECK(rep.det == det(fm.entries));
}
