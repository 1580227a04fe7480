#include "mapvir/poly.hpp"

#include <algorithm>

#include "mapvir/errors.hpp"

namespace mapvir {

Poly::Poly(std::vector<Scalar> ascending) : coeffs_(std::move(ascending)) { trim(); }

Poly Poly::constant(const Scalar& c) { return Poly({c}); }

Poly Poly::monomial(const Scalar& c, long degree) {
  std::vector<Scalar> v(static_cast<size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::linear_root(const Scalar& point) { return Poly({-point, Scalar(1)}); }

void Poly::trim() {
  while (!coeffs_.empty() && mapvir::is_zero(coeffs_.back())) coeffs_.pop_back();
}

Scalar Poly::coeff(long k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<size_t>(k)];
}

Scalar Poly::operator()(const Scalar& x) const {
  Scalar acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Scalar inv = 1 / leading();
  return inv * *this;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(out));
}

Poly operator*(const Scalar& s, const Poly& p) {
  std::vector<Scalar> out = p.coeffs_;
  for (auto& c : out) c *= s;
  return Poly(std::move(out));
}

Poly Poly::pow(unsigned long e) const {
  Poly result = constant(1);
  for (unsigned long i = 0; i < e; ++i) result = result * *this;
  return result;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (long k = degree(); k >= 0; --k) {
    Scalar c = coeffs_[static_cast<size_t>(k)];
    if (mapvir::is_zero(c)) continue;
    bool negative = sgn(c) < 0;
    Scalar mag = negative ? Scalar(-c) : c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string power = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    if (k == 0)
      out += mapvir::to_string(mag);
    else if (mag == 1)
      out += power;
    else
      out += mapvir::to_string(mag) + "*" + power;
  }
  return out;
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw ComputationError("polynomial division by zero");
  std::vector<Scalar> rem = a.coeffs();
  long db = b.degree();
  long da = a.degree();
  if (da < db) return {Poly(), a};
  std::vector<Scalar> quot(static_cast<size_t>(da - db + 1));
  Scalar lead_inv = 1 / b.leading();
  for (long k = da; k >= db; --k) {
    Scalar q = rem[static_cast<size_t>(k)] * lead_inv;
    if (is_zero(q)) continue;
    quot[static_cast<size_t>(k - db)] = q;
    for (long i = 0; i <= db; ++i) rem[static_cast<size_t>(k - db + i)] -= q * b.coeffs()[static_cast<size_t>(i)];
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly gcd(const Poly& a, const Poly& b) { return extended_gcd(a, b).g; }

ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(1), s1;
  Poly u0, u1 = Poly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.is_zero()) return {r0, s0, u0};
  Scalar inv = 1 / r0.leading();
  return {inv * r0, inv * s0, inv * u0};
}

Poly inverse_mod(const Poly& a, const Poly& m) {
  auto eg = extended_gcd(a % m, m);
  if (eg.g.degree() != 0) throw ComputationError("polynomial " + a.to_string() + " is not invertible modulo " + m.to_string());
  return eg.s % m;
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

RationalRoots rational_roots(const Poly& p) {
  RationalRoots out;
  if (p.is_zero()) return out;
  Poly rest = p;
  // Roots at zero first, so the constant term of what remains is nonzero.
  int zero_mult = 0;
  while (rest.degree() > 0 && is_zero(rest.coeff(0))) {
    rest = divmod(rest, Poly::linear_root(0)).quotient;
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.emplace_back(Scalar(0), zero_mult);
  if (rest.degree() > 0) {
    mpz_class lcm_den = 1;
    for (const auto& c : rest.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    mpz_class lead = Scalar(rest.leading() * lcm_den).get_num();
    mpz_class constant = Scalar(rest.coeff(0) * lcm_den).get_num();
    std::vector<Scalar> candidates;
    for (const auto& pnum : positive_divisors(constant))
      for (const auto& qden : positive_divisors(lead)) {
        Scalar r(pnum, qden);
        r.canonicalize();
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
      int mult = 0;
      while (rest.degree() > 0 && is_zero(rest(r))) {
        rest = divmod(rest, Poly::linear_root(r)).quotient;
        ++mult;
      }
      if (mult > 0) out.roots.emplace_back(r, mult);
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.fully_split = rest.degree() <= 0;
  return out;
}

}  // namespace mapvir
