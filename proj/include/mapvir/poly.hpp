#pragma once

#include <string>
#include <vector>

#include "mapvir/scalar.hpp"

namespace mapvir {

/// Dense univariate polynomial over Q in the variable t, coefficients stored
/// in ascending degree with no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Scalar> ascending);
  static Poly constant(const Scalar& c);
  static Poly monomial(const Scalar& c, long degree);
  /// t - point
  static Poly linear_root(const Scalar& point);

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  Scalar coeff(long k) const;
  const Scalar& leading() const { return coeffs_.back(); }

  Scalar operator()(const Scalar& x) const;
  Poly monic() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& s, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  Poly pow(unsigned long e) const;

  /// Descending-degree display, e.g. "t^2 - 3*t + 2".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Scalar> coeffs_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);

/// s*a + u*b = g with g = gcd(a, b) monic.
struct ExtendedGcd {
  Poly g, s, u;
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);

/// Inverse of a modulo m; throws ComputationError when they are not coprime.
Poly inverse_mod(const Poly& a, const Poly& m);

/// Rational roots with multiplicity, found by the rational root test on the
/// integer-scaled polynomial. Irreducible factors of degree >= 2 are left out;
/// `fully_split` reports whether the roots account for the whole degree.
struct RationalRoots {
  std::vector<std::pair<Scalar, int>> roots;
  bool fully_split = false;
};
RationalRoots rational_roots(const Poly& p);

}  // namespace mapvir
