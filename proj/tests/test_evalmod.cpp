#include <doctest.h>

#include <random>

#include "mapvir/errors.hpp"
#include "mapvir/evalmod.hpp"
#include "mapvir/parse.hpp"
#include "oracles.hpp"

using namespace mapvir;

namespace {

AlgebraPtr two_points() { return Algebra::product_local({{0, 1}, {1, 1}}); }

IntSeriesSpec spec(Scalar a, Scalar b, long w) { return {a, b, {-w, w}}; }

}  // namespace

TEST_CASE("intermediate series coefficients") {
  auto s = spec(rational(1, 2), rational(1, 3), 10);
  auto r = int_series_act(s, 2, 1);
  CHECK(r.coefficient == rational(17, 6));
  CHECK(r.target == 3);
  for (long n = -3; n <= 3; ++n) CHECK(int_series_act(spec(0, 0, 5), n, 0).coefficient == 0);
  for (long k = -5; k <= 5; ++k) CHECK(int_series_act(s, 0, k).coefficient == Scalar(k) + s.a + s.b);
  CHECK_THROWS_AS(int_series_act(s, 3, 9), WindowOverflow);
  CHECK_THROWS_AS(int_series_act(s, 0, 11), WindowOverflow);
}

TEST_CASE("Lie consistency against the formula") {
  std::mt19937_64 rng(5);
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  for (int i = 0; i < 5; ++i) {
    Scalar a = rational(pick(-5, 5), pick(1, 4)), b = rational(pick(-5, 5), pick(1, 4));
    auto s = spec(a, b, 22);
    CHECK(int_series_lie_consistent(s, 6, {-10, 10}));
    for (long m = -6; m <= 6; ++m)
      for (long n = -6; n <= 6; ++n)
        for (long k = -10; k <= 10; ++k) {
          oracle::Q lhs = oracle::int_series_coeff(a, b, m, n + k) * oracle::int_series_coeff(a, b, n, k) -
                          oracle::int_series_coeff(a, b, n, m + k) * oracle::int_series_coeff(a, b, m, k);
          CHECK(lhs == Scalar(n - m) * oracle::int_series_coeff(a, b, m + n, k));
        }
  }
}

TEST_CASE("trivial sub and quotient loci") {
  for (Scalar a : {Scalar(-1), Scalar(0), rational(1, 2), Scalar(1), Scalar(2)})
    for (Scalar b : {Scalar(-3), Scalar(-1), Scalar(0), Scalar(2), rational(1, 3), rational(-5, 2)}) {
      auto s = spec(a, b, 8);
      // brute force: t^k killed by every d_n that stays in the window
      std::optional<long> sub, quo;
      for (long k = -8; k <= 8; ++k) {
        bool killed = true, missed = true;
        for (long n = -16; n <= 16; ++n) {
          if (k + n >= -8 && k + n <= 8 && oracle::int_series_coeff(a, b, n, k) != 0) killed = false;
          // t^k is hit from t^{k-n} by d_n
          if (n != 0 && k - n >= -8 && k - n <= 8 && oracle::int_series_coeff(a, b, n, k - n) != 0) missed = false;
        }
        if (killed) sub = k;
        if (missed) quo = k;
      }
      CHECK(int_series_trivial_submodule(s) == sub);
      CHECK(int_series_trivial_quotient(s) == quo);
      bool integral = b.get_den() == 1;
      CHECK(sub.has_value() == (a == 0 && integral));
      CHECK(quo.has_value() == (a == 1 && integral));
      if (sub) CHECK(*sub == -b);
      if (quo) CHECK(*quo == -1 - b);
    }
}

TEST_CASE("evaluation at a point") {
  auto p = Algebra::polynomial({0, 6});
  auto h = ModuleHandle::int_series_eval(p, spec(rational(1, 2), rational(1, 3), 10), 2);
  IntSeriesVector v{{1, 1}};
  auto img = std::get<IntSeriesVector>(eval_act(*h, LieElement::d(1, parse_element("t", p)), v));
  CHECK(img.size() == 1);
  CHECK(img.at(2) == 2 * int_series_act(spec(rational(1, 2), rational(1, 3), 10), 1, 1).coefficient);
  auto zero = std::get<IntSeriesVector>(eval_act(*h, LieElement::d(1, parse_element("t - 2", p)), v));
  CHECK(zero.empty());
  CHECK(annihilates_on_window(*h, parse_element("t^2 - 4", p)));
  CHECK_FALSE(annihilates_on_window(*h, parse_element("t", p)));
}

TEST_CASE("evaluation kills its ideal on random inputs") {
  std::mt19937_64 rng(9);
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  auto a = Algebra::product_local({{0, 2}, {1, 1}, {-1, 1}});
  auto h = ModuleHandle::int_series_eval(a, spec(rational(2, 3), rational(-1, 5), 12), 1);
  for (int i = 0; i < 100; ++i) {
    // f in m = (t - 1)
    AlgebraElement g(a, Coords{{0, pick(-3, 3)}, {1, pick(-3, 3)}, {3, pick(-2, 2)}});
    AlgebraElement f = parse_element("t - 1", a) * g;
    IntSeriesVector v{{pick(-6, 6), rational(pick(1, 5), pick(1, 3))}};
    auto img = std::get<IntSeriesVector>(eval_act(*h, LieElement::d(pick(-3, 3), f) + LieElement::c(g), v));
    CHECK(img.empty());
  }
}

TEST_CASE("generalized evaluation keeps the order-two part") {
  auto a = Algebra::product_local({{0, 2}, {1, 1}});
  QuotientMap q = local_quotient(a, 0, 2);
  auto inner_phi = std::make_shared<const Functional>(q.target(), Coords{{0, 3}, {1, 1}}, Coords{});
  auto inner = ModuleHandle::verma(inner_phi);
  auto g = ModuleHandle::generalized_eval(a, 0, 2, inner);
  std::vector<VermaVector> v{VermaVector(inner_phi, EnvElement::one(q.target()))};
  auto img = std::get<std::vector<VermaVector>>(eval_act(*g, LieElement::d(0, parse_element("t", a)), v));
  REQUIRE(img.size() == 1);
  CHECK(img[0].env().coeff(PbwMonomial()) == 1);
  auto none = std::get<std::vector<VermaVector>>(eval_act(*g, LieElement::d(0, parse_element("t^2", a)), v));
  CHECK(none.empty());
}

TEST_CASE("annihilators and supports") {
  auto a = two_points();
  auto ev = ModuleHandle::int_series_eval(a, spec(rational(1, 2), rational(1, 3), 10), 0);
  auto r = annihilator_support(*ev);
  CHECK(r.annihilator.contains(parse_element("t", a)));
  CHECK(r.annihilator.dim() == 1);
  REQUIRE(r.support);
  CHECK(*r.support == std::vector<Scalar>{0});
  CHECK(r.closure_verified);

  // split across both points: annihilator zero, support both points
  auto phi = std::make_shared<const Functional>(a, Coords{{0, 5}, {1, 2}}, Coords{});
  auto irr = annihilator_support(*ModuleHandle::irreducible(phi));
  CHECK(irr.annihilator.is_zero());
  REQUIRE(irr.support);
  CHECK(*irr.support == std::vector<Scalar>{0, 1});

  // supported at 1 only
  auto phi1 = std::make_shared<const Functional>(a, Coords{{0, 2}, {1, 2}}, Coords{});
  auto one = annihilator_support(*ModuleHandle::irreducible(phi1));
  REQUIRE(one.support);
  CHECK(*one.support == std::vector<Scalar>{1});
  CHECK(one.annihilator.contains(parse_element("t - 1", a)));

  auto trivial = annihilator_support(*ModuleHandle::irreducible(std::make_shared<const Functional>(a, Coords{}, Coords{})));
  CHECK(trivial.annihilator.is_whole());
  CHECK(trivial.support->empty());

  auto tensor = ModuleHandle::tensor({ev, ModuleHandle::int_series_eval(a, spec(0, rational(1, 2), 10), 1)});
  auto t = annihilator_support(*tensor);
  CHECK(t.annihilator.is_zero());
  CHECK(*t.support == std::vector<Scalar>{0, 1});

  auto q = annihilator_support(*ModuleHandle::irreducible(std::make_shared<const Functional>(Algebra::rationals(), Coords{{0, 1}}, Coords{})));
  CHECK_FALSE(q.support);
  CHECK_FALSE(q.note.empty());
}

TEST_CASE("weight tables") {
  auto a = two_points();
  auto ev = ModuleHandle::int_series_eval(a, spec(rational(1, 2), rational(1, 3), 10), 0);
  auto t = weight_multiplicities(*ev, {-6, 6});
  for (const auto& [k, m] : t.multiplicities) CHECK(m == 1);
  CHECK_FALSE(t.zero_weight_offset);
  CHECK(t.base_weight == rational(5, 6));

  auto flagged = weight_multiplicities(*ModuleHandle::int_series_eval(a, spec(0, 2, 10), 0), {-3, 3});
  CHECK(flagged.trivial_submodule);
  CHECK(flagged.zero_weight_offset == -2);

  auto q = Algebra::rationals();
  auto verma = ModuleHandle::verma(std::make_shared<const Functional>(q, Coords{{0, rational(5, 7)}}, Coords{{0, 2}}));
  auto vt = weight_multiplicities(*verma, {-4, 0});
  std::vector<long> got;
  for (long k = 0; k >= -4; --k) got.push_back(vt.multiplicities.at(k));
  auto expect = oracle::colored_partitions(1, 4);
  CHECK(got == expect);

  for (long w : {3L, 5L, 8L}) {
    auto x = ModuleHandle::int_series_eval(a, spec(rational(1, 2), rational(1, 3), w), 0);
    auto y = ModuleHandle::int_series_eval(a, spec(rational(1, 4), rational(2, 5), w), 1);
    auto tt = weight_multiplicities(*ModuleHandle::tensor({x, y}), {-2 * w - 1, 2 * w + 1});
    CHECK(tt.window_truncated);
    for (long k = -2 * w - 1; k <= 2 * w + 1; ++k) {
      long pairs = 0;
      for (long i = -w; i <= w; ++i)
        for (long j = -w; j <= w; ++j) pairs += i + j == k;
      CHECK(tt.multiplicities.at(k) == pairs);
    }
    CHECK(tt.multiplicities.at(0) >= w);
  }
}

TEST_CASE("tensor of highest weight modules convolves") {
  auto a = two_points();
  auto phi0 = std::make_shared<const Functional>(a, Coords{}, Coords{{0, 1}});
  auto phi1 = std::make_shared<const Functional>(a, Coords{{0, 2}, {1, 2}}, Coords{});
  auto t = weight_multiplicities(*ModuleHandle::tensor({ModuleHandle::irreducible(phi0), ModuleHandle::irreducible(phi1)}), {-4, 0});
  auto d0 = quotient_dims(phi0, 4), d1 = quotient_dims(phi1, 4);
  auto conv = oracle::convolve(d0, d1);
  for (long n = 0; n <= 4; ++n) CHECK(t.multiplicities.at(-n) == conv[static_cast<size_t>(n)]);
  CHECK(t.base_weight == 2);
}

TEST_CASE("algebra mismatch") {
  auto a = two_points();
  auto ev = ModuleHandle::int_series_eval(a, spec(1, 0, 5), 0);
  CHECK_THROWS_AS(annihilates_on_window(*ev, AlgebraElement::unit(Algebra::product_local({{0, 3}}))), AlgebraMismatch);
  CHECK_THROWS(ModuleHandle::int_series_eval(a, spec(1, 0, 5), 7));
}
