#pragma once

#include <map>
#include <string>
#include <vector>

#include "mapvir/algebra.hpp"

namespace mapvir {

/// Bound on |mode| accepted by LieElement. Defaults to 64, or the value of
/// MAPVIR_MODE_MAX when set at first use.
long mode_max();
void set_mode_max(long bound);

/// Central coefficient (m^3 - m)/12 of [d_m, d_{-m}].
Scalar central_coefficient(long m);

/// Element sum_n d_n (x) f_n + c (x) g of Vir (x) A.
class LieElement {
 public:
  explicit LieElement(AlgebraPtr algebra);

  /// d_mode (x) f; throws ModeRange when |mode| > mode_max().
  static LieElement d(long mode, const AlgebraElement& f);
  static LieElement c(const AlgebraElement& g);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::map<long, AlgebraElement>& d_part() const { return d_; }
  const AlgebraElement& c_part() const { return c_; }
  bool is_zero() const { return d_.empty() && c_.is_zero(); }
  /// Coefficient of d_mode, zero when absent.
  AlgebraElement d_coeff(long mode) const;

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Scalar& s);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator-(LieElement a) { return a *= Scalar(-1); }
  friend LieElement operator*(const Scalar& s, LieElement a) { return a *= s; }
  friend bool operator==(const LieElement& a, const LieElement& b);

  /// "-4*d[0] + 1/2*c", "d[-1]*(t) + c*(1/2)"-style text (modes ascending, c last).
  std::string to_string() const;

 private:
  void add_d(long mode, const AlgebraElement& f);

  AlgebraPtr algebra_;
  std::map<long, AlgebraElement> d_;
  AlgebraElement c_;
};

/// [d_m f, d_n g] = (n - m) d_{m+n} fg + delta_{m,-n} (m^3 - m)/12 c fg, c central.
LieElement bracket(const LieElement& x, const LieElement& y);

struct GradeComponent {
  long mode = 0;
  LieElement element;
};

/// Components sorted by mode; the c-part belongs to mode 0; zero parts dropped.
std::vector<GradeComponent> grade_decompose(const LieElement& x);

}  // namespace mapvir
