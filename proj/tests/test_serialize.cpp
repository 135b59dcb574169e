#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hodgebox/serialize.hpp"

using namespace hodgebox;

TEST_CASE("rationals") {
  RatVector v{BigRational(-3, 2), 0, 7};
  auto j = rationals_to_json(v);
  CHECK(j.dump() == R"(["-3/2","0","7"])");
  CHECK(rationals_from_json(j) == v);
  CHECK(rationals_from_json(Json::parse("[1, \"2/4\"]")) == RatVector{1, BigRational(1, 2)});
  CHECK_THROWS(rationals_from_json(Json::parse("[1.5]")));
  CHECK_THROWS(rationals_from_json(Json::parse("[\"1/0\"]")));
}

TEST_CASE("random rationals survive the text form") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 500; ++t) {
    BigRational q(static_cast<long>(rng() % 2000001) - 1000000, static_cast<long>(1 + rng() % 99999));
    q.canonicalize();
    CHECK(parse_rational(to_string(q)) == q);
  }
}

TEST_CASE("boxes, tuples, operators") {
  BoxBody b({1, BigRational(1, 3)}, {-1, 2});
  CHECK(box_from_json(box_to_json(b)) == b);
  CHECK(box_from_json(Json::parse(R"({"n":2,"widths":["1","2"]})")) == BoxBody({1, 2}));
  CHECK_THROWS(box_from_json(Json::parse(R"({"n":3,"widths":["1","2"]})")));

  BodyTuple t(2, {{b, 1}, {BoxBody({2, 2}), 1}});
  auto tj = tuple_to_json(t);
  CHECK(tuple_to_json(tuple_from_json(tj)) == tj);

  SlabOperator op(3, 2, {{0b011, 2}, {0b110, BigRational(-1, 2)}});
  CHECK(operator_from_json(operator_to_json(op)) == op);

  Violation v{{0, 2, 5}, BigRational(-7, 3)};
  auto vj = violation_to_json(v);
  CHECK(vj.dump() == R"({"I":[0,2,5],"det":"-7/3"})");
  auto back = violation_from_json(vj);
  CHECK(back.subset == v.subset);
  CHECK(back.det == v.det);
}

TEST_CASE("certificate byte round trip") {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{4, 2}, {6, 3}}) {
    auto cert = construct_counterexample(n, k);
    const std::string first = dump_canonical(certificate_to_json(cert));
    auto parsed = certificate_from_json(Json::parse(first));
    CHECK(dump_canonical(certificate_to_json(parsed)) == first);
    CHECK(verify_certificate(parsed).ok);
  }
}

TEST_CASE("matrix input") {
  auto j = Json::parse(R"({"k":1,"bodies":[{"n":2,"widths":["1","2"]},{"box":{"n":2,"widths":["3","1"]}}],"C":[]})");
  auto fm = matrix_input_from_json(j);
  CHECK(fm.entries(0, 1) == BigRational(7, 2));
  CHECK(fm.k == 1);
}
