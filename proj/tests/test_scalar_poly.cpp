#include <doctest.h>

#include "mapvir/errors.hpp"
#include "mapvir/linalg.hpp"
#include "mapvir/parse.hpp"
#include "mapvir/poly.hpp"
#include "oracles.hpp"

using namespace mapvir;

namespace {

Poly from_oracle(const oracle::Poly& p) { return Poly(std::vector<Scalar>(p.begin(), p.end())); }

}  // namespace

TEST_CASE("scalars stay canonical") {
  CHECK(to_string(rational(6, 12)) == "1/2");
  CHECK(to_string(rational(4, -2)) == "-2");
  CHECK(parse_scalar("-10/4") == rational(-5, 2));
  CHECK(to_string(parse_scalar("0/7")) == "0");
  CHECK_THROWS_AS(parse_scalar("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_scalar("x"), ValidationError);
  CHECK_THROWS_AS(parse_scalar("1/-2"), ValidationError);
  for (long p = -7; p <= 7; ++p)
    for (long q = 1; q <= 6; ++q) {
      Scalar s = rational(p, q);
      CHECK(parse_scalar(to_string(s)) == s);
    }
  CHECK(mapvir::pow(rational(-2, 3), 3) == rational(-8, 27));
}

TEST_CASE("poly division agrees with schoolbook remainder") {
  oracle::Poly a{3, -1, 0, 2, 5, 1}, m{-2, 0, 1};
  PolyDivision d = divmod(from_oracle(a), from_oracle(m));
  CHECK(d.remainder == from_oracle(oracle::reduce(a, m)));
  CHECK(d.quotient * from_oracle(m) + d.remainder == from_oracle(a));
  CHECK(d.remainder.degree() < 2);
}

TEST_CASE("poly products evaluate pointwise") {
  Poly p = parse_poly("t^3 - 2*t + 1/3"), q = parse_poly("(t-1)^2*(t+2)");
  for (long x = -3; x <= 3; ++x) CHECK((p * q)(Scalar(x)) == p(Scalar(x)) * q(Scalar(x)));
  CHECK(q.to_string() == "t^3 - 3*t + 2");
}

TEST_CASE("extended gcd identity") {
  Poly a = parse_poly("t^2"), b = parse_poly("t - 1");
  ExtendedGcd e = extended_gcd(a, b);
  CHECK(e.g == Poly::constant(1));
  CHECK(e.s * a + e.u * b == e.g);
  Poly x = parse_poly("(t-1)^2*(t+3)"), y = parse_poly("(t-1)*(t-2)");
  ExtendedGcd f = extended_gcd(x, y);
  CHECK(f.g == parse_poly("t - 1"));
  CHECK(f.s * x + f.u * y == f.g);
  CHECK_THROWS_AS(inverse_mod(x, y), ComputationError);
  Poly inv = inverse_mod(parse_poly("t+1"), parse_poly("t^2 + 1"));
  CHECK((inv * parse_poly("t+1")) % parse_poly("t^2+1") == Poly::constant(1));
}

TEST_CASE("rational roots with multiplicity") {
  RationalRoots r = rational_roots(parse_poly("(t-1)^2*(t+2)*(2*t-1)"));
  CHECK(r.fully_split);
  REQUIRE(r.roots.size() == 3);
  std::map<Scalar, int> got(r.roots.begin(), r.roots.end());
  CHECK(got[Scalar(1)] == 2);
  CHECK(got[Scalar(-2)] == 1);
  CHECK(got[rational(1, 2)] == 1);
  RationalRoots s = rational_roots(parse_poly("(t^2+1)*(t-3)"));
  CHECK_FALSE(s.fully_split);
  REQUIRE(s.roots.size() == 1);
  CHECK(s.roots[0].first == Scalar(3));
}

TEST_CASE("linear algebra") {
  Matrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  CHECK(mapvir::rank(m, 3) == oracle::rank({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}));
  auto k = kernel(m, 3);
  REQUIRE(k.size() == 1);
  CHECK(is_zero_vector(matvec(m, k[0])));
  Matrix h{{1, 2, 0}, {3, -1, 4}, {rational(1, 2), 0, 2}};
  std::vector<std::vector<oracle::Q>> ho{{1, 2, 0}, {3, -1, 4}, {oracle::frac(1, 2), 0, 2}};
  CHECK(determinant(h) == oracle::det(ho));
}
