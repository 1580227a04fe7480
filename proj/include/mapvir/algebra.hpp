#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mapvir/linalg.hpp"
#include "mapvir/poly.hpp"
#include "mapvir/scalar.hpp"

namespace mapvir {

enum class AlgebraKind { structure_constants, product_local, polynomial, laurent };

std::string to_string(AlgebraKind kind);

/// Local factor Q[t]/((t - point)^order) of a product_local algebra.
struct LocalFactor {
  Scalar point;
  int order = 1;
};

/// Closed integer interval [lo, hi].
struct Window {
  long lo = 0;
  long hi = 0;

  bool contains(long k) const { return lo <= k && k <= hi; }
  long size() const { return hi - lo + 1; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Sparse coordinates: basis key -> nonzero coefficient.
using Coords = std::map<long, Scalar>;

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A commutative associative unital algebra over Q.
///
/// Every basis vector is addressed by an integer key, and the basis order is
/// ascending key order. Finite kinds use keys 0..dim-1. The polynomial and
/// laurent kinds use the exponent k of t^k as key and only represent the
/// exponents inside their window; products leaving the window throw
/// WindowOverflow rather than truncating.
///
/// Univariate presentations (product_local, univariate_quotient, polynomial,
/// laurent) key t^k by k, which is what evaluation at points relies on.
class Algebra {
 public:
  /// Q itself, basis {1}.
  static AlgebraPtr rationals();
  /// Validates commutativity, associativity and the unit law.
  static AlgebraPtr from_structure_constants(Vector unit, std::vector<Matrix> tensor,
                                             std::vector<std::string> labels = {});
  /// Q[t]/(prod (t - a_i)^{n_i}) on the monomial basis 1, t, ..., t^{N-1}.
  static AlgebraPtr product_local(std::vector<LocalFactor> factors);
  /// Q[t]/(modulus) on the monomial basis; modulus must have degree >= 1.
  static AlgebraPtr univariate_quotient(const Poly& modulus);
  static AlgebraPtr polynomial(Window window);
  static AlgebraPtr laurent(Window window);

  AlgebraKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == AlgebraKind::structure_constants || kind_ == AlgebraKind::product_local; }
  /// Finite dimension, or the number of exponents in the window.
  size_t dim() const { return keys_.size(); }
  const std::vector<long>& keys() const { return keys_; }
  bool valid_key(long key) const;
  /// Position of a key in basis order.
  size_t position(long key) const;
  const std::string& label(long key) const;
  std::optional<long> key_for_label(const std::string& label) const;

  /// Product of two basis vectors.
  Coords product(long a, long b) const;
  const Coords& unit() const { return unit_; }

  /// True when keys are powers of t (see class comment).
  bool univariate() const { return univariate_; }
  /// Modulus for finite univariate presentations.
  const std::optional<Poly>& modulus() const { return modulus_; }
  const std::vector<LocalFactor>& factors() const { return factors_; }
  const Window& window() const { return window_; }

  bool same_as(const Algebra& other) const;
  /// One-line description used in report metadata.
  std::string describe() const;
  /// Basis order used for PBW monomials, e.g. "1 > t > t^2".
  std::string basis_order() const;

 private:
  Algebra() = default;
  void finish_finite();

  AlgebraKind kind_ = AlgebraKind::structure_constants;
  std::vector<long> keys_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Coords>> table_;  // finite kinds only
  Coords unit_;
  bool univariate_ = false;
  std::optional<Poly> modulus_;
  std::vector<LocalFactor> factors_;
  Window window_;
};

/// Algebra handles are interchangeable when they point at the same object or
/// describe the same structure.
bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);
void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

class AlgebraElement {
 public:
  explicit AlgebraElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}
  AlgebraElement(AlgebraPtr algebra, Coords coords);

  static AlgebraElement unit(const AlgebraPtr& algebra);
  static AlgebraElement scalar(const AlgebraPtr& algebra, const Scalar& s);
  static AlgebraElement basis(const AlgebraPtr& algebra, long key);
  /// t^k; finite presentations reduce by the modulus, negative k needs laurent.
  static AlgebraElement t_power(const AlgebraPtr& algebra, long k);
  /// Image of a polynomial in t; requires a univariate presentation.
  static AlgebraElement from_poly(const AlgebraPtr& algebra, const Poly& p);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Coords& coords() const { return coords_; }
  Scalar coeff(long key) const;
  bool is_zero() const { return coords_.empty(); }
  /// Dense coordinates in basis order (finite kinds and windows alike).
  Vector dense() const;
  static AlgebraElement from_dense(const AlgebraPtr& algebra, const Vector& v);
  /// Polynomial in t for univariate presentations with keys >= 0.
  Poly to_poly() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const Scalar& s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= Scalar(-1); }
  friend AlgebraElement operator*(const Scalar& s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

  std::string to_string() const;

 private:
  AlgebraPtr algebra_;
  Coords coords_;
};

/// Exact product in the common algebra. Throws AlgebraMismatch, WindowOverflow.
AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);

/// An ideal J of A. Finite algebras store a reduced echelon basis; windowed
/// kinds store a principal generator instead (a "principal-ideal record").
class Ideal {
 public:
  static Ideal zero(const AlgebraPtr& algebra);
  static Ideal whole(const AlgebraPtr& algebra);
  /// Generated by p in Q[t] or Q[t, t^-1]; the generator is normalized monic
  /// (and stripped of t-factors in the laurent case, where t is a unit).
  static Ideal principal_record(const AlgebraPtr& algebra, const Poly& generator);
  /// Takes the span of `rows` as is; callers guarantee ideal closure.
  static Ideal from_span(const AlgebraPtr& algebra, Matrix rows);

  const AlgebraPtr& algebra() const { return algebra_; }
  bool is_principal_record() const { return generator_.has_value(); }
  const Poly& generator() const;
  /// Throws InfiniteDimensionalAlgebra for principal records.
  const Echelon& basis() const;
  size_t dim() const { return basis().rank(); }
  size_t codim() const;
  bool is_zero() const;
  bool is_whole() const;
  bool contains(const AlgebraElement& f) const;
  bool subset_of(const Ideal& other) const;
  std::vector<AlgebraElement> elements() const;
  /// Every basis row times every algebra basis vector stays in the span.
  bool multiplication_stable() const;
  /// Monic generator when A has a univariate presentation.
  std::optional<Poly> univariate_generator() const;
  /// "(t - 2)" for principal ideals, "span{...}" otherwise.
  std::string to_string() const;

  friend bool operator==(const Ideal& a, const Ideal& b);

 private:
  explicit Ideal(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

  AlgebraPtr algebra_;
  Echelon basis_;
  std::optional<Poly> generator_;
};

Ideal ideal_closure(std::span<const AlgebraElement> gens);
Ideal ideal_product(const Ideal& I, const Ideal& J);
Ideal ideal_power(const Ideal& I, int n);
Ideal ideal_intersection(const Ideal& I, const Ideal& J);

/// Projection A -> A/I together with the quotient algebra.
class QuotientMap {
 public:
  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  AlgebraElement operator()(const AlgebraElement& f) const;

 private:
  friend QuotientMap quotient_algebra(const AlgebraPtr& A, const Ideal& I);
  friend QuotientMap local_quotient(const AlgebraPtr& A, const Scalar& point, int order);

  AlgebraPtr source_;
  AlgebraPtr target_;
  // Finite route: reduce modulo the ideal echelon, keep complement columns.
  std::optional<Echelon> ideal_;
  std::vector<size_t> complement_;
  // Univariate route: reduce t^k modulo a polynomial.
  std::optional<Poly> modulus_;
  std::optional<Poly> t_inverse_;
};

/// Throws ImproperIdeal when I = A.
QuotientMap quotient_algebra(const AlgebraPtr& A, const Ideal& I);

/// A -> A/m^order with m = (t - point). Needs a univariate presentation (or
/// A = Q with order 1). Throws ImproperIdeal when the point is not in the
/// support of A.
QuotientMap local_quotient(const AlgebraPtr& A, const Scalar& point, int order);

struct LocalComponent {
  Scalar point;
  int order = 1;
  Ideal maximal;             // ideal of A generated by t - point
  AlgebraElement idempotent;  // CRT idempotent supported on this factor
};

/// CRT decomposition of a product_local algebra, in factor order.
/// Throws UnsupportedKind for every other kind.
std::vector<LocalComponent> local_decomposition(const AlgebraPtr& A);

}  // namespace mapvir
