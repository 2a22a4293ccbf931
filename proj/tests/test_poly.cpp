#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gkm/poly.hpp"

using namespace gkm;

namespace {

Poly2 random_poly(std::mt19937& rng, int max_deg) {
  std::uniform_int_distribution<int> c(-4, 4);
  Poly2 p;
  for (int d = 0; d <= max_deg; ++d)
    for (int j = 0; j <= d; ++j) p.add_coeff(d - j, j, c(rng));
  return p;
}

}  // namespace

TEST_CASE("arithmetic basics") {
  Poly2 u1 = Poly2::linear(weight(1, 0));
  Poly2 u2 = Poly2::linear(weight(0, 1));
  Poly2 p = u1 * u1 - Int(2) * (u1 * u2) + Poly2::constant(3);
  CHECK(p.degree() == 2);
  CHECK(p.coeff(2, 0) == 1);
  CHECK(p.coeff(1, 1) == -2);
  CHECK(p.coeff(0, 0) == 3);
  CHECK(p.str() == "u1^2 - 2*u1*u2 + 3");
  CHECK((p - p).is_zero());
  CHECK(Poly2::linear(weight(2, -3)) + Poly2::linear(weight(-2, 3)) == Poly2());
}

TEST_CASE("ring laws on random polynomials") {
  std::mt19937 rng(17);
  for (int t = 0; t < 50; ++t) {
    Poly2 a = random_poly(rng, 2), b = random_poly(rng, 2), c = random_poly(rng, 1);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("divided_by_linear") {
  SUBCASE("exact products divide back") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> c(-4, 4);
    int done = 0;
    while (done < 100) {
      Weight l = weight(c(rng), c(rng));
      if (is_zero(l)) continue;
      ++done;
      Poly2 h = random_poly(rng, 2);
      Poly2 f = Poly2::linear(l) * h;
      auto q = f.divided_by_linear(l);
      REQUIRE(q.has_value());
      CHECK(*q == h);
    }
  }
  SUBCASE("non-multiples are rejected") {
    Poly2 u1 = Poly2::linear(weight(1, 0));
    CHECK_FALSE(u1.divided_by_linear(weight(0, 1)).has_value());
    CHECK_FALSE(Poly2::constant(5).divided_by_linear(weight(1, 1)).has_value());
    // (2*u1) / (sub-integral): u1+u2 does not divide 2*u1
    CHECK_FALSE((Int(2) * u1).divided_by_linear(weight(1, 1)).has_value());
    // integrality: (u1^2 - u2^2) / (2*u1 + 2*u2) is not integral
    Poly2 u2 = Poly2::linear(weight(0, 1));
    Poly2 f = u1 * u1 - u2 * u2;
    CHECK_FALSE(f.divided_by_linear(weight(2, 2)).has_value());
    CHECK(f.divided_by_linear(weight(1, 1)).has_value());
  }
}

TEST_CASE("eval") {
  Poly2 u1 = Poly2::linear(weight(1, 0));
  Poly2 u2 = Poly2::linear(weight(0, 1));
  Poly2 p = u1 * u2 + Poly2::constant(1);
  CHECK(p.eval(Rat(1, 2), Rat(4)) == Rat(3));
}

TEST_CASE("homogeneous parts") {
  Poly2 u1 = Poly2::linear(weight(1, 0));
  Poly2 p = u1 * u1 + u1 + Poly2::constant(7);
  CHECK(p.is_homogeneous(2) == false);
  CHECK(p.homogeneous_part(2) == u1 * u1);
  CHECK(p.homogeneous_part(1) == u1);
  CHECK((u1 * u1).is_homogeneous(2));
}
