#include "mapvir/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "mapvir/errors.hpp"

namespace mapvir {

std::string to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::structure_constants: return "structure_constants";
    case AlgebraKind::product_local: return "product_local";
    case AlgebraKind::polynomial: return "polynomial";
    case AlgebraKind::laurent: return "laurent";
  }
  return "?";
}

namespace {

std::string power_label(long k) {
  if (k == 0) return "1";
  if (k == 1) return "t";
  return "t^" + std::to_string(k);
}

void add_scaled(Coords& acc, const Coords& v, const Scalar& s) {
  for (const auto& [k, c] : v) {
    Scalar& slot = acc[k];
    slot += s * c;
    if (is_zero(slot)) acc.erase(k);
  }
}

Coords coords_of(const Poly& p) {
  Coords out;
  for (long k = 0; k <= p.degree(); ++k)
    if (!is_zero(p.coeff(k))) out[k] = p.coeff(k);
  return out;
}

Poly reduce_power(long k, const Poly& modulus, const std::optional<Poly>& t_inverse) {
  if (k >= 0) return Poly::monomial(1, k) % modulus;
  if (!t_inverse) throw ComputationError("negative power of t without an inverse of t");
  Poly acc = Poly::constant(1);
  for (long i = 0; i < -k; ++i) acc = (acc * *t_inverse) % modulus;
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- Algebra

AlgebraPtr Algebra::rationals() {
  static const AlgebraPtr q = [] {
    std::vector<Matrix> tensor{{{Scalar(1)}}};
    return from_structure_constants({Scalar(1)}, std::move(tensor), {"1"});
  }();
  return q;
}

AlgebraPtr Algebra::from_structure_constants(Vector unit, std::vector<Matrix> tensor,
                                             std::vector<std::string> labels) {
  const size_t d = unit.size();
  if (d == 0) throw ValidationError("structure_constants: dim must be positive");
  if (tensor.size() != d) throw ValidationError("structure_constants: tensor has wrong first dimension");
  for (const auto& slab : tensor) {
    if (slab.size() != d) throw ValidationError("structure_constants: tensor has wrong second dimension");
    for (const auto& row : slab)
      if (row.size() != d) throw ValidationError("structure_constants: tensor has wrong third dimension");
  }
  if (labels.empty())
    for (size_t i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i));
  if (labels.size() != d) throw ValidationError("structure_constants: label count differs from dim");

  std::shared_ptr<Algebra> a(new Algebra());
  a->kind_ = AlgebraKind::structure_constants;
  a->labels_ = std::move(labels);
  a->table_.assign(d, std::vector<Coords>(d));
  for (size_t i = 0; i < d; ++i) {
    a->keys_.push_back(static_cast<long>(i));
    for (size_t j = 0; j < d; ++j)
      for (size_t k = 0; k < d; ++k)
        if (!is_zero(tensor[i][j][k])) a->table_[i][j][static_cast<long>(k)] = tensor[i][j][k];
    if (!is_zero(unit[i])) a->unit_[static_cast<long>(i)] = unit[i];
  }

  auto mul = [&](const Coords& x, const Coords& y) {
    Coords out;
    for (const auto& [i, ci] : x)
      for (const auto& [j, cj] : y) add_scaled(out, a->table_[i][j], ci * cj);
    return out;
  };
  for (size_t i = 0; i < d; ++i) {
    Coords ei{{static_cast<long>(i), Scalar(1)}};
    if (mul(a->unit_, ei) != ei) throw ValidationError("structure_constants: unit law fails on basis vector " + a->labels_[i]);
    for (size_t j = 0; j < d; ++j) {
      if (a->table_[i][j] != a->table_[j][i])
        throw ValidationError("structure_constants: not commutative on (" + a->labels_[i] + ", " + a->labels_[j] + ")");
      for (size_t k = 0; k < d; ++k) {
        Coords ek{{static_cast<long>(k), Scalar(1)}};
        if (mul(a->table_[i][j], ek) != mul(ei, a->table_[j][k]))
          throw ValidationError("structure_constants: not associative on (" + a->labels_[i] + ", " + a->labels_[j] +
                                ", " + a->labels_[k] + ")");
      }
    }
  }
  return a;
}

AlgebraPtr Algebra::univariate_quotient(const Poly& modulus) {
  if (modulus.degree() < 1) throw ValidationError("univariate quotient needs a modulus of degree >= 1");
  Poly m = modulus.monic();
  const long n = m.degree();
  std::shared_ptr<Algebra> a(new Algebra());
  a->kind_ = AlgebraKind::structure_constants;
  a->univariate_ = true;
  a->modulus_ = m;
  a->table_.assign(static_cast<size_t>(n), std::vector<Coords>(static_cast<size_t>(n)));
  for (long i = 0; i < n; ++i) {
    a->keys_.push_back(i);
    a->labels_.push_back(power_label(i));
    for (long j = 0; j < n; ++j) a->table_[i][j] = coords_of(Poly::monomial(1, i + j) % m);
  }
  a->unit_[0] = 1;
  return a;
}

AlgebraPtr Algebra::product_local(std::vector<LocalFactor> factors) {
  if (factors.empty()) throw ValidationError("product_local: at least one factor required");
  Poly p = Poly::constant(1);
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].order < 1) throw ValidationError("product_local: factor order must be positive");
    for (size_t j = 0; j < i; ++j)
      if (factors[i].point == factors[j].point)
        throw ValidationError("product_local: points must be pairwise distinct (repeated " +
                              mapvir::to_string(factors[i].point) + ")");
    p = p * Poly::linear_root(factors[i].point).pow(static_cast<unsigned long>(factors[i].order));
  }
  auto base = univariate_quotient(p);
  std::shared_ptr<Algebra> a(new Algebra(*base));
  a->kind_ = AlgebraKind::product_local;
  a->factors_ = std::move(factors);
  return a;
}

AlgebraPtr Algebra::polynomial(Window window) {
  if (window.lo != 0 || window.hi < 0) throw ValidationError("polynomial window must be [0, D] with D >= 0");
  std::shared_ptr<Algebra> a(new Algebra());
  a->kind_ = AlgebraKind::polynomial;
  a->univariate_ = true;
  a->window_ = window;
  for (long k = window.lo; k <= window.hi; ++k) {
    a->keys_.push_back(k);
    a->labels_.push_back(power_label(k));
  }
  a->unit_[0] = 1;
  return a;
}

AlgebraPtr Algebra::laurent(Window window) {
  if (window.lo > 0 || window.hi < 0) throw ValidationError("laurent window must contain 0");
  std::shared_ptr<Algebra> a(new Algebra());
  a->kind_ = AlgebraKind::laurent;
  a->univariate_ = true;
  a->window_ = window;
  for (long k = window.lo; k <= window.hi; ++k) {
    a->keys_.push_back(k);
    a->labels_.push_back(power_label(k));
  }
  a->unit_[0] = 1;
  return a;
}

bool Algebra::valid_key(long key) const {
  if (!table_.empty()) return key >= 0 && key < static_cast<long>(keys_.size());
  return window_.contains(key);
}

size_t Algebra::position(long key) const {
  if (!valid_key(key)) throw ComputationError("basis key " + std::to_string(key) + " is not valid for " + describe());
  return static_cast<size_t>(table_.empty() ? key - window_.lo : key);
}

const std::string& Algebra::label(long key) const { return labels_[position(key)]; }

std::optional<long> Algebra::key_for_label(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return keys_[i];
  return std::nullopt;
}

Coords Algebra::product(long a, long b) const {
  if (!table_.empty()) return table_[position(a)][position(b)];
  long k = a + b;
  if (!window_.contains(k))
    throw WindowOverflow(label(a) + " * " + label(b) + " = " + power_label(k) + " leaves the window [" +
                         std::to_string(window_.lo) + ", " + std::to_string(window_.hi) + "]");
  return {{k, Scalar(1)}};
}

bool Algebra::same_as(const Algebra& o) const {
  return kind_ == o.kind_ && keys_ == o.keys_ && labels_ == o.labels_ && table_ == o.table_ && unit_ == o.unit_ &&
         window_ == o.window_ && modulus_ == o.modulus_;
}

std::string Algebra::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case AlgebraKind::structure_constants:
      out << "structure_constants dim " << dim();
      if (modulus_) out << " Q[t]/(" << modulus_->to_string() << ")";
      break;
    case AlgebraKind::product_local:
      out << "product_local Q[t]/(";
      for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) out << " ";
        out << "(" << Poly::linear_root(factors_[i].point).to_string() << ")";
        if (factors_[i].order > 1) out << "^" << factors_[i].order;
      }
      out << ")";
      break;
    case AlgebraKind::polynomial:
    case AlgebraKind::laurent:
      out << to_string(kind_) << (kind_ == AlgebraKind::polynomial ? " Q[t]" : " Q[t,t^-1]") << " window [" << window_.lo
          << ", " << window_.hi << "]";
      break;
  }
  return out.str();
}

std::string Algebra::basis_order() const {
  std::string out;
  for (size_t i = 0; i < labels_.size(); ++i) out += (i ? " > " : "") + labels_[i];
  return out;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!same_algebra(a, b)) throw AlgebraMismatch();
}

// ---------------------------------------------------------------- elements

AlgebraElement::AlgebraElement(AlgebraPtr algebra, Coords coords) : algebra_(std::move(algebra)) {
  for (auto& [k, c] : coords) {
    if (!algebra_->valid_key(k))
      throw WindowOverflow("basis key " + std::to_string(k) + " outside " + algebra_->describe());
    if (!mapvir::is_zero(c)) coords_.emplace(k, std::move(c));
  }
}

AlgebraElement AlgebraElement::unit(const AlgebraPtr& algebra) { return AlgebraElement(algebra, algebra->unit()); }

AlgebraElement AlgebraElement::scalar(const AlgebraPtr& algebra, const Scalar& s) { return s * unit(algebra); }

AlgebraElement AlgebraElement::basis(const AlgebraPtr& algebra, long key) {
  return AlgebraElement(algebra, Coords{{key, Scalar(1)}});
}

AlgebraElement AlgebraElement::t_power(const AlgebraPtr& algebra, long k) {
  if (!algebra->univariate()) throw UnsupportedKind("the variable t is not defined in " + algebra->describe());
  if (algebra->modulus()) {
    std::optional<Poly> inv;
    if (k < 0) inv = inverse_mod(Poly::monomial(1, 1), *algebra->modulus());
    return AlgebraElement(algebra, coords_of(reduce_power(k, *algebra->modulus(), inv)));
  }
  if (k < 0 && algebra->kind() == AlgebraKind::polynomial)
    throw ComputationError("t is not invertible in the polynomial algebra");
  if (!algebra->window().contains(k))
    throw WindowOverflow(power_label(k) + " leaves the window of " + algebra->describe());
  return basis(algebra, k);
}

AlgebraElement AlgebraElement::from_poly(const AlgebraPtr& algebra, const Poly& p) {
  AlgebraElement out(algebra);
  for (long k = 0; k <= p.degree(); ++k)
    if (!mapvir::is_zero(p.coeff(k))) out += p.coeff(k) * t_power(algebra, k);
  return out;
}

Scalar AlgebraElement::coeff(long key) const {
  auto it = coords_.find(key);
  return it == coords_.end() ? Scalar(0) : it->second;
}

Vector AlgebraElement::dense() const {
  Vector v(algebra_->dim());
  for (const auto& [k, c] : coords_) v[algebra_->position(k)] = c;
  return v;
}

AlgebraElement AlgebraElement::from_dense(const AlgebraPtr& algebra, const Vector& v) {
  Coords c;
  for (size_t i = 0; i < v.size(); ++i)
    if (!mapvir::is_zero(v[i])) c[algebra->keys()[i]] = v[i];
  return AlgebraElement(algebra, std::move(c));
}

Poly AlgebraElement::to_poly() const {
  if (!algebra_->univariate()) throw UnsupportedKind("no polynomial form in " + algebra_->describe());
  std::vector<Scalar> v;
  for (const auto& [k, c] : coords_) {
    if (k < 0) throw ComputationError("element has negative powers of t");
    if (v.size() <= static_cast<size_t>(k)) v.resize(static_cast<size_t>(k) + 1);
    v[static_cast<size_t>(k)] = c;
  }
  return Poly(std::move(v));
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same_algebra(algebra_, o.algebra_);
  add_scaled(coords_, o.coords_, Scalar(1));
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same_algebra(algebra_, o.algebra_);
  add_scaled(coords_, o.coords_, Scalar(-1));
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Scalar& s) {
  if (mapvir::is_zero(s)) {
    coords_.clear();
    return *this;
  }
  for (auto& [k, c] : coords_) c *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return same_algebra(a.algebra_, b.algebra_) && a.coords_ == b.coords_;
}

std::string AlgebraElement::to_string() const {
  if (coords_.empty()) return "0";
  if (algebra_->univariate()) {
    // Descending powers, matching Poly::to_string, negative powers allowed.
    std::string out;
    for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) {
      const auto& [k, c] = *it;
      bool negative = sgn(c) < 0;
      Scalar mag = negative ? Scalar(-c) : c;
      out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
      if (k == 0)
        out += mapvir::to_string(mag);
      else
        out += (mag == 1 ? "" : mapvir::to_string(mag) + "*") + power_label(k);
    }
    return out;
  }
  std::string out;
  for (const auto& [k, c] : coords_) {
    bool negative = sgn(c) < 0;
    Scalar mag = negative ? Scalar(-c) : c;
    out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    const std::string& lab = algebra_->label(k);
    if (lab == "1")
      out += mapvir::to_string(mag);
    else
      out += (mag == 1 ? "" : mapvir::to_string(mag) + "*") + lab;
  }
  return out;
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x.algebra(), y.algebra());
  Coords out;
  for (const auto& [i, ci] : x.coords())
    for (const auto& [j, cj] : y.coords()) add_scaled(out, x.algebra()->product(i, j), ci * cj);
  return AlgebraElement(x.algebra(), std::move(out));
}

// ---------------------------------------------------------------- ideals

namespace {

bool windowed(const AlgebraPtr& a) { return !a->is_finite() && !a->modulus(); }

Poly strip_t(Poly p) {
  while (!p.is_zero() && p.degree() > 0 && is_zero(p.coeff(0))) p = divmod(p, Poly::monomial(1, 1)).quotient;
  return p;
}

// Polynomial multiple t^s * f with no negative powers.
Poly shifted_poly(const AlgebraElement& f) {
  if (f.is_zero()) return {};
  long shift = std::min(0L, f.coords().begin()->first);
  std::vector<Scalar> v;
  for (const auto& [k, c] : f.coords()) {
    size_t idx = static_cast<size_t>(k - shift);
    if (v.size() <= idx) v.resize(idx + 1);
    v[idx] = c;
  }
  return Poly(std::move(v));
}

Poly normalize_generator(const AlgebraPtr& a, Poly g) {
  if (g.is_zero()) return g;
  if (a->kind() == AlgebraKind::laurent) g = strip_t(std::move(g));
  return g.monic();
}

}  // namespace

Ideal Ideal::zero(const AlgebraPtr& algebra) {
  if (windowed(algebra)) return principal_record(algebra, Poly());
  Ideal out(algebra);
  out.basis_.cols = algebra->dim();
  return out;
}

Ideal Ideal::whole(const AlgebraPtr& algebra) {
  if (windowed(algebra)) return principal_record(algebra, Poly::constant(1));
  Matrix rows(algebra->dim(), Vector(algebra->dim()));
  for (size_t i = 0; i < rows.size(); ++i) rows[i][i] = 1;
  return from_span(algebra, std::move(rows));
}

Ideal Ideal::principal_record(const AlgebraPtr& algebra, const Poly& generator) {
  if (!windowed(algebra)) throw ComputationError("principal-ideal records are for polynomial/laurent algebras");
  Ideal out(algebra);
  out.generator_ = normalize_generator(algebra, generator);
  return out;
}

Ideal Ideal::from_span(const AlgebraPtr& algebra, Matrix rows) {
  if (windowed(algebra)) throw InfiniteDimensionalAlgebra("span ideals need a finite-dimensional algebra");
  Ideal out(algebra);
  out.basis_ = row_reduce(std::move(rows), algebra->dim());
  return out;
}

const Poly& Ideal::generator() const {
  if (!generator_) throw ComputationError("ideal is not a principal-ideal record");
  return *generator_;
}

const Echelon& Ideal::basis() const {
  if (generator_)
    throw InfiniteDimensionalAlgebra("ideal (" + generator_->to_string() + ") of " + algebra_->describe() +
                                     " has no finite basis matrix");
  return basis_;
}

size_t Ideal::codim() const {
  if (generator_) {
    if (generator_->is_zero()) throw InfiniteDimensionalAlgebra("zero ideal of an infinite-dimensional algebra");
    return static_cast<size_t>(generator_->degree());
  }
  return algebra_->dim() - basis_.rank();
}

bool Ideal::is_zero() const { return generator_ ? generator_->is_zero() : basis_.rank() == 0; }

bool Ideal::is_whole() const {
  return generator_ ? generator_->degree() == 0 : basis_.rank() == algebra_->dim();
}

bool Ideal::contains(const AlgebraElement& f) const {
  require_same_algebra(algebra_, f.algebra());
  if (generator_) {
    if (f.is_zero()) return true;
    if (generator_->is_zero()) return false;
    return (shifted_poly(f) % *generator_).is_zero();
  }
  return basis_.contains(f.dense());
}

bool Ideal::subset_of(const Ideal& other) const {
  require_same_algebra(algebra_, other.algebra_);
  if (generator_) {
    if (generator_->is_zero()) return true;
    if (other.generator_->is_zero()) return false;
    return (*generator_ % *other.generator_).is_zero();
  }
  for (const auto& row : basis_.rows)
    if (!other.basis_.contains(row)) return false;
  return true;
}

std::vector<AlgebraElement> Ideal::elements() const {
  if (generator_) {
    if (generator_->is_zero()) return {};
    return {AlgebraElement::from_poly(algebra_, *generator_)};
  }
  std::vector<AlgebraElement> out;
  for (const auto& row : basis_.rows) out.push_back(AlgebraElement::from_dense(algebra_, row));
  return out;
}

bool Ideal::multiplication_stable() const {
  if (generator_) return true;
  for (const auto& b : elements())
    for (long key : algebra_->keys())
      if (!contains(b * AlgebraElement::basis(algebra_, key))) return false;
  return true;
}

std::optional<Poly> Ideal::univariate_generator() const {
  if (generator_) return generator_;
  if (!algebra_->modulus()) return std::nullopt;
  Poly g = *algebra_->modulus();
  for (const auto& e : elements()) g = gcd(g, e.to_poly());
  return g.monic();
}

std::string Ideal::to_string() const {
  if (is_zero()) return "(0)";
  if (auto g = univariate_generator()) return "(" + g->to_string() + ")";
  std::string out = "span{";
  auto els = elements();
  for (size_t i = 0; i < els.size(); ++i) out += (i ? ", " : "") + els[i].to_string();
  return out + "}";
}

bool operator==(const Ideal& a, const Ideal& b) {
  if (!same_algebra(a.algebra_, b.algebra_)) return false;
  if (a.generator_ || b.generator_) return a.generator_ == b.generator_;
  return a.basis_.rows == b.basis_.rows;
}

Ideal ideal_closure(std::span<const AlgebraElement> gens) {
  if (gens.empty()) throw ValidationError("ideal_closure needs at least one generator");
  const AlgebraPtr& a = gens.front().algebra();
  for (const auto& g : gens) require_same_algebra(a, g.algebra());
  if (windowed(a)) {
    Poly g;
    for (const auto& f : gens) g = gcd(g, shifted_poly(f));
    return Ideal::principal_record(a, g);
  }
  Matrix rows;
  for (const auto& g : gens) rows.push_back(g.dense());
  while (true) {
    Echelon e = row_reduce(rows, a->dim());
    Matrix extra;
    for (const auto& row : e.rows) {
      auto b = AlgebraElement::from_dense(a, row);
      for (long key : a->keys()) {
        Vector prod = (b * AlgebraElement::basis(a, key)).dense();
        if (!e.contains(prod)) extra.push_back(std::move(prod));
      }
    }
    if (extra.empty()) return Ideal::from_span(a, std::move(e.rows));
    rows = std::move(e.rows);
    rows.insert(rows.end(), extra.begin(), extra.end());
  }
}

Ideal ideal_product(const Ideal& I, const Ideal& J) {
  require_same_algebra(I.algebra(), J.algebra());
  const AlgebraPtr& a = I.algebra();
  if (I.is_principal_record()) return Ideal::principal_record(a, I.generator() * J.generator());
  Matrix rows;
  auto ie = I.elements();
  auto je = J.elements();
  for (const auto& x : ie)
    for (const auto& y : je) rows.push_back((x * y).dense());
  return Ideal::from_span(a, std::move(rows));
}

Ideal ideal_power(const Ideal& I, int n) {
  if (n < 1) throw ValidationError("ideal_power needs n >= 1");
  Ideal out = I;
  for (int i = 1; i < n; ++i) out = ideal_product(out, I);
  return out;
}

Ideal ideal_intersection(const Ideal& I, const Ideal& J) {
  require_same_algebra(I.algebra(), J.algebra());
  const AlgebraPtr& a = I.algebra();
  if (I.is_principal_record()) {
    const Poly& f = I.generator();
    const Poly& g = J.generator();
    if (f.is_zero() || g.is_zero()) return Ideal::zero(a);
    return Ideal::principal_record(a, divmod(f * g, gcd(f, g)).quotient);
  }
  const auto& ib = I.basis().rows;
  const auto& jb = J.basis().rows;
  const size_t d = a->dim();
  // Columns are the basis vectors of I and -J; kernel vectors give x with
  // sum x_i I_i = sum y_j J_j.
  Matrix m(d, Vector(ib.size() + jb.size()));
  for (size_t r = 0; r < d; ++r) {
    for (size_t i = 0; i < ib.size(); ++i) m[r][i] = ib[i][r];
    for (size_t j = 0; j < jb.size(); ++j) m[r][ib.size() + j] = -jb[j][r];
  }
  Matrix rows;
  for (const auto& k : kernel(m, ib.size() + jb.size())) {
    Vector v(d);
    for (size_t i = 0; i < ib.size(); ++i)
      for (size_t r = 0; r < d; ++r) v[r] += k[i] * ib[i][r];
    rows.push_back(std::move(v));
  }
  return Ideal::from_span(a, std::move(rows));
}

// ---------------------------------------------------------------- quotients

AlgebraElement QuotientMap::operator()(const AlgebraElement& f) const {
  require_same_algebra(source_, f.algebra());
  if (modulus_) {
    Poly acc;
    for (const auto& [k, c] : f.coords()) acc += c * reduce_power(k, *modulus_, t_inverse_);
    return AlgebraElement(target_, coords_of(acc % *modulus_));
  }
  Vector v = ideal_->reduce(f.dense());
  Coords out;
  for (size_t i = 0; i < complement_.size(); ++i)
    if (!is_zero(v[complement_[i]])) out[static_cast<long>(i)] = v[complement_[i]];
  return AlgebraElement(target_, std::move(out));
}

QuotientMap quotient_algebra(const AlgebraPtr& A, const Ideal& I) {
  require_same_algebra(A, I.algebra());
  if (I.is_whole()) throw ImproperIdeal("quotient by the whole algebra");
  QuotientMap q;
  q.source_ = A;
  if (I.is_principal_record()) {
    const Poly& g = I.generator();
    if (g.is_zero()) throw InfiniteDimensionalAlgebra("quotient of " + A->describe() + " by the zero ideal");
    q.modulus_ = g;
    if (A->kind() == AlgebraKind::laurent) q.t_inverse_ = inverse_mod(Poly::monomial(1, 1), g);
    q.target_ = Algebra::univariate_quotient(g);
    return q;
  }
  const Echelon& e = I.basis();
  q.ideal_ = e;
  q.complement_ = e.free_columns();
  if (I.is_zero()) {
    q.target_ = A;
    return q;
  }
  const size_t m = q.complement_.size();
  bool leading_powers = A->univariate();
  for (size_t i = 0; i < m && leading_powers; ++i) leading_powers = q.complement_[i] == i;
  if (leading_powers) {
    // Classes of 1, t, ..., t^{m-1} form a basis; the relation for t^m is the modulus.
    Vector tm = e.reduce(AlgebraElement::t_power(A, static_cast<long>(m)).dense());
    std::vector<Scalar> mod(m + 1);
    mod[m] = 1;
    for (size_t i = 0; i < m; ++i) mod[i] = -tm[i];
    q.target_ = Algebra::univariate_quotient(Poly(std::move(mod)));
    return q;
  }
  std::vector<Matrix> tensor(m, Matrix(m, Vector(m)));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      Coords p = A->product(A->keys()[q.complement_[i]], A->keys()[q.complement_[j]]);
      Vector v = e.reduce(AlgebraElement(A, p).dense());
      for (size_t k = 0; k < m; ++k) tensor[i][j][k] = v[q.complement_[k]];
    }
  Vector unit_full = e.reduce(AlgebraElement::unit(A).dense());
  Vector unit(m);
  std::vector<std::string> labels;
  for (size_t k = 0; k < m; ++k) {
    unit[k] = unit_full[q.complement_[k]];
    labels.push_back(A->label(A->keys()[q.complement_[k]]));
  }
  q.target_ = Algebra::from_structure_constants(std::move(unit), std::move(tensor), std::move(labels));
  return q;
}

QuotientMap local_quotient(const AlgebraPtr& A, const Scalar& point, int order) {
  if (order < 1) throw ValidationError("local quotient order must be >= 1");
  if (!A->univariate()) {
    if (A->dim() == 1 && order == 1) return quotient_algebra(A, Ideal::zero(A));
    throw UnsupportedKind("evaluation at a point needs a univariate presentation, got " + A->describe());
  }
  Poly local = Poly::linear_root(point).pow(static_cast<unsigned long>(order));
  QuotientMap q;
  q.source_ = A;
  if (A->modulus()) {
    local = gcd(local, *A->modulus());
    if (local.degree() < 1)
      throw ImproperIdeal("point " + to_string(point) + " is not in the support of " + A->describe());
  } else if (A->kind() == AlgebraKind::laurent) {
    if (is_zero(point)) throw ImproperIdeal("t is a unit in the laurent algebra; (t) is not proper");
    q.t_inverse_ = inverse_mod(Poly::monomial(1, 1), local);
  }
  q.modulus_ = local;
  q.target_ = Algebra::univariate_quotient(local);
  return q;
}

std::vector<LocalComponent> local_decomposition(const AlgebraPtr& A) {
  if (A->kind() != AlgebraKind::product_local)
    throw UnsupportedKind("local decomposition needs a product_local presentation, got " + A->describe());
  const Poly& whole = *A->modulus();
  std::vector<LocalComponent> out;
  for (const auto& f : A->factors()) {
    Poly local = Poly::linear_root(f.point).pow(static_cast<unsigned long>(f.order));
    Poly rest = divmod(whole, local).quotient;
    // s*rest + u*local = 1, so s*rest is 1 mod local and 0 mod rest.
    auto eg = extended_gcd(rest, local);
    Poly e = (eg.s * rest) % whole;
    AlgebraElement gen = AlgebraElement::from_poly(A, Poly::linear_root(f.point));
    out.push_back({f.point, f.order, ideal_closure(std::span(&gen, 1)), AlgebraElement::from_poly(A, e)});
  }
  return out;
}

}  // namespace mapvir
