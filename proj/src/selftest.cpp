#include "mapvir/selftest.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "mapvir/errors.hpp"
#include "mapvir/evalmod.hpp"

namespace mapvir {

namespace {

using Rng = std::mt19937_64;

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

AlgebraPtr random_algebra(Rng& rng) {
  if (pick(rng, 0, 3) == 0) {
    // Monic modulus of degree 2 or 3 with small coefficients.
    long deg = pick(rng, 2, 3);
    std::vector<Scalar> c(static_cast<size_t>(deg + 1));
    for (long i = 0; i < deg; ++i) c[static_cast<size_t>(i)] = pick(rng, -2, 2);
    c.back() = 1;
    return Algebra::univariate_quotient(Poly(std::move(c)));
  }
  std::vector<long> pts{-2, -1, 0, 1, 2};
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<LocalFactor> fs;
  long nf = pick(rng, 1, 2), total = 0;
  for (long i = 0; i < nf; ++i) {
    long order = pick(rng, 1, 4 - total - (nf - 1 - i));
    total += order;
    fs.push_back({Scalar(pts[static_cast<size_t>(i)]), static_cast<int>(order)});
  }
  return Algebra::product_local(std::move(fs));
}

AlgebraElement random_element(const AlgebraPtr& a, Rng& rng) {
  Coords c;
  for (long k : a->keys()) {
    long v = pick(rng, -3, 3);
    if (v) c[k] = rational(v, pick(rng, 1, 2));
  }
  return AlgebraElement(a, std::move(c));
}

LieElement random_lie(const AlgebraPtr& a, Rng& rng, long max_mode) {
  LieElement x(a);
  long terms = pick(rng, 1, 2);
  for (long i = 0; i < terms; ++i) x += LieElement::d(pick(rng, -max_mode, max_mode), random_element(a, rng));
  if (pick(rng, 0, 2) == 0) x += LieElement::c(random_element(a, rng));
  return x;
}

LieElement lowering_generator(const AlgebraPtr& a, Rng& rng) {
  const auto& keys = a->keys();
  long key = keys[static_cast<size_t>(pick(rng, 0, static_cast<long>(keys.size()) - 1))];
  return LieElement::d(-pick(rng, 1, 3), AlgebraElement::basis(a, key));
}

void record(SuiteResult& r, bool ok, const std::string& what) {
  ++r.cases;
  if (ok) return;
  if (r.failures++ == 0) r.first_failure = what;
}

SuiteResult jacobi(Rng& rng) {
  SuiteResult r;
  r.name = "jacobi";
  for (int i = 0; i < 200; ++i) {
    AlgebraPtr a = random_algebra(rng);
    LieElement x = random_lie(a, rng, 4), y = random_lie(a, rng, 4), z = random_lie(a, rng, 4);
    LieElement s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    record(r, s.is_zero(), x.to_string() + ", " + y.to_string() + ", " + z.to_string());
  }
  return r;
}

SuiteResult antisymmetry(Rng& rng) {
  SuiteResult r;
  r.name = "antisymmetry";
  for (int i = 0; i < 200; ++i) {
    AlgebraPtr a = random_algebra(rng);
    LieElement x = random_lie(a, rng, 4), y = random_lie(a, rng, 4);
    record(r, bracket(x, y) == -bracket(y, x), x.to_string() + ", " + y.to_string());
  }
  return r;
}

// x(yM) - y(xM) = [x, y]M for lowering generators and PBW monomials M.
SuiteResult straightening(Rng& rng) {
  SuiteResult r;
  r.name = "straightening";
  for (int i = 0; i < 100; ++i) {
    AlgebraPtr a = random_algebra(rng);
    Straightener s(a);
    LieElement x = lowering_generator(a, rng), y = lowering_generator(a, rng);
    auto basis = pbw_basis(pick(rng, 0, 3), *a);
    PbwMonomial m = basis[static_cast<size_t>(pick(rng, 0, static_cast<long>(basis.size()) - 1))];
    EnvElement v = EnvElement::monomial(a, m);
    EnvElement lhs = s.left_multiply(x, s.left_multiply(y, v)) - s.left_multiply(y, s.left_multiply(x, v));
    EnvElement rhs = s.left_multiply(bracket(x, y), v);
    record(r, lhs == rhs, x.to_string() + ", " + y.to_string() + " on " + m.to_string(*a));
  }
  return r;
}

SuiteResult algebra_axioms(Rng& rng) {
  SuiteResult r;
  r.name = "algebra_axioms";
  for (int i = 0; i < 60; ++i) {
    AlgebraPtr a = random_algebra(rng);
    AlgebraElement x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
    AlgebraElement one = AlgebraElement::unit(a);
    bool ok = (x * y) * z == x * (y * z) && x * y == y * x && one * x == x && x * (y + z) == x * y + x * z;
    Ideal ideal = ideal_closure(std::span(&x, 1));
    if (ok && !ideal.is_whole()) {
      QuotientMap q = quotient_algebra(a, ideal);
      ok = q(y * z) == q(y) * q(z) && q(y + z) == q(y) + q(z) && q(one) == AlgebraElement::unit(q.target()) &&
           q(x).is_zero();
    }
    record(r, ok, a->describe() + ": " + x.to_string() + ", " + y.to_string() + ", " + z.to_string());
  }
  return r;
}

SuiteResult idempotents(Rng& rng) {
  SuiteResult r;
  r.name = "idempotents";
  for (int i = 0; i < 40; ++i) {
    AlgebraPtr a = random_algebra(rng);
    if (a->kind() != AlgebraKind::product_local) {
      --i;
      continue;
    }
    auto comps = local_decomposition(a);
    AlgebraElement sum(a);
    bool ok = true;
    for (size_t p = 0; p < comps.size(); ++p) {
      const AlgebraElement& e = comps[p].idempotent;
      sum += e;
      ok = ok && e * e == e;
      for (size_t q = p + 1; q < comps.size(); ++q) ok = ok && (e * comps[q].idempotent).is_zero();
      Poly local = Poly::linear_root(comps[p].point).pow(static_cast<unsigned long>(comps[p].order));
      ok = ok && ((e - AlgebraElement::unit(a)).to_poly() % local).is_zero();
    }
    ok = ok && sum == AlgebraElement::unit(a);
    record(r, ok, a->describe());
  }
  return r;
}

SuiteResult int_series(Rng& rng) {
  SuiteResult r;
  r.name = "int_series";
  for (int i = 0; i < 5; ++i) {
    IntSeriesSpec spec{rational(pick(rng, -6, 6), pick(rng, 1, 4)), rational(pick(rng, -6, 6), pick(rng, 1, 4)), {-22, 22}};
    record(r, int_series_lie_consistent(spec, 6, {-10, 10}),
           "a = " + to_string(spec.a) + ", b = " + to_string(spec.b));
  }
  return r;
}

// x(yv) - y(xv) = [x, y]v in M(phi) for raising and lowering generators.
SuiteResult verma_action(Rng& rng) {
  SuiteResult r;
  r.name = "verma_action";
  for (int i = 0; i < 30; ++i) {
    AlgebraPtr a = random_algebra(rng);
    auto phi = std::make_shared<const Functional>(a, random_element(a, rng).coords(), random_element(a, rng).coords());
    VermaModule m(phi);
    auto gen = [&]() {
      const auto& keys = a->keys();
      long key = keys[static_cast<size_t>(pick(rng, 0, static_cast<long>(keys.size()) - 1))];
      long mode = pick(rng, -2, 2);
      return LieElement::d(mode, AlgebraElement::basis(a, key));
    };
    LieElement x = gen(), y = gen();
    auto basis = m.basis(pick(rng, 0, 2));
    PbwMonomial mono = basis[static_cast<size_t>(pick(rng, 0, static_cast<long>(basis.size()) - 1))];
    EnvElement v = EnvElement::monomial(a, mono);
    EnvElement lhs = m.act(x, m.act(y, v)) - m.act(y, m.act(x, v));
    record(r, lhs == m.act(bracket(x, y), v), x.to_string() + ", " + y.to_string() + " on " + mono.to_string(*a));
  }
  return r;
}

using Suite = std::function<SuiteResult(Rng&)>;

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> all{
      {"jacobi", jacobi},         {"antisymmetry", antisymmetry}, {"straightening", straightening},
      {"algebra_axioms", algebra_axioms}, {"idempotents", idempotents},   {"int_series", int_series},
      {"verma_action", verma_action},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& selftest_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, s] : suites()) out.push_back(n);
    return out;
  }();
  return names;
}

std::vector<SuiteResult> run_selftest(std::uint64_t seed, const std::vector<std::string>& only) {
  for (const auto& name : only)
    if (std::find(selftest_suites().begin(), selftest_suites().end(), name) == selftest_suites().end())
      throw ValidationError("unknown selftest suite \"" + name + "\"");
  std::vector<SuiteResult> out;
  for (size_t i = 0; i < suites().size(); ++i) {
    const auto& [name, suite] = suites()[i];
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    // Each suite draws from its own stream so selecting suites keeps cases stable.
    Rng rng(seed + 0x9E3779B97F4A7C15ULL * (i + 1));
    out.push_back(suite(rng));
  }
  return out;
}

}  // namespace mapvir
