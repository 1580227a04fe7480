#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mapvir/liealg.hpp"

namespace mapvir {

/// The generator d_{-depth} (x) b_key of V_-, depth >= 1.
struct PbwFactor {
  long depth = 1;
  long key = 0;

  friend auto operator<=>(const PbwFactor&, const PbwFactor&) = default;
};

/// The order on generators: deeper modes rank higher, and for equal depth the
/// earlier algebra basis vector ranks higher. True iff a strictly precedes b.
bool factor_greater(const PbwFactor& a, const PbwFactor& b);

/// Ordered monomial in U(V_-); factors are kept in non-increasing order.
class PbwMonomial {
 public:
  PbwMonomial() = default;
  explicit PbwMonomial(std::vector<PbwFactor> factors);

  const std::vector<PbwFactor>& factors() const { return factors_; }
  long height() const { return static_cast<long>(factors_.size()); }
  /// Sum of the depths; the weight is -depth().
  long depth() const;
  long weight() const { return -depth(); }
  bool empty() const { return factors_.empty(); }
  /// "d[-2]*t . d[-1]*1", or "1" for the empty monomial.
  std::string to_string(const Algebra& algebra) const;

  friend auto operator<=>(const PbwMonomial&, const PbwMonomial&) = default;

 private:
  std::vector<PbwFactor> factors_;
};

/// Monomial order: compare (height, depths..., basis keys...) lexicographically
/// with larger heights and depths and earlier keys ranking higher. Sorting
/// with this comparator lists the highest monomial first.
struct PbwDescending {
  bool operator()(const PbwMonomial& a, const PbwMonomial& b) const;
};

using EnvTerms = std::map<PbwMonomial, Scalar, PbwDescending>;

/// Element of U(V_-) in the PBW basis.
class EnvElement {
 public:
  explicit EnvElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}
  EnvElement(AlgebraPtr algebra, EnvTerms terms);
  static EnvElement one(const AlgebraPtr& algebra);
  static EnvElement monomial(const AlgebraPtr& algebra, PbwMonomial m, const Scalar& coeff = 1);

  const AlgebraPtr& algebra() const { return algebra_; }
  const EnvTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(const PbwMonomial& m) const;

  void add_term(const PbwMonomial& m, const Scalar& c);
  EnvElement& operator+=(const EnvElement& o);
  EnvElement& operator-=(const EnvElement& o);
  EnvElement& operator*=(const Scalar& s);
  friend EnvElement operator+(EnvElement a, const EnvElement& b) { return a += b; }
  friend EnvElement operator-(EnvElement a, const EnvElement& b) { return a -= b; }
  friend EnvElement operator*(const Scalar& s, EnvElement a) { return a *= s; }
  friend bool operator==(const EnvElement& a, const EnvElement& b);

  std::string to_string() const;

 private:
  AlgebraPtr algebra_;
  EnvTerms terms_;
};

/// Normal ordering in U(V_-). Results are memoized per instance, so one
/// Straightener should not be shared between threads; independent instances
/// are fully independent.
class Straightener {
 public:
  explicit Straightener(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

  const AlgebraPtr& algebra() const { return algebra_; }
  /// g * m rewritten in the PBW basis.
  const EnvTerms& left_multiply(const PbwFactor& g, const PbwMonomial& m);
  EnvElement left_multiply(const PbwFactor& g, const EnvElement& x);
  /// x * y for x in V_- (throws NotLowering otherwise).
  EnvElement left_multiply(const LieElement& x, const EnvElement& y);
  EnvElement straighten(std::span<const LieElement> word);

 private:
  AlgebraPtr algebra_;
  std::map<std::pair<PbwFactor, PbwMonomial>, EnvTerms> memo_;
};

/// Image of the word's product in U(V_-). Throws NotLowering, WindowOverflow.
EnvElement straighten(std::span<const LieElement> word);

struct HeightHm {
  long height = -1;
  EnvElement hm;
};

/// Height and highest term; (-1, 0) for the zero element.
HeightHm height_hm(const EnvElement& x);

/// Basis keys used to colour PBW generators: every basis key for finite
/// algebras, the keys inside `colors` for polynomial/laurent algebras (where
/// the window is mandatory, MissingWindow otherwise).
std::vector<long> color_keys(const Algebra& algebra, const std::optional<Window>& colors);

/// All PBW monomials of weight -n, highest first.
std::vector<PbwMonomial> pbw_basis(long n, const Algebra& algebra, const std::optional<Window>& colors = std::nullopt);

}  // namespace mapvir
