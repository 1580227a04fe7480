#include "mapvir/pbw.hpp"

#include <algorithm>

#include "mapvir/errors.hpp"

namespace mapvir {

bool factor_greater(const PbwFactor& a, const PbwFactor& b) {
  if (a.depth != b.depth) return a.depth > b.depth;
  return a.key < b.key;
}

PbwMonomial::PbwMonomial(std::vector<PbwFactor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_)
    if (f.depth < 1) throw NotLowering("PBW factor with depth " + std::to_string(f.depth));
  std::stable_sort(factors_.begin(), factors_.end(), factor_greater);
}

long PbwMonomial::depth() const {
  long s = 0;
  for (const auto& f : factors_) s += f.depth;
  return s;
}

std::string PbwMonomial::to_string(const Algebra& algebra) const {
  if (factors_.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += " . ";
    out += "d[" + std::to_string(-factors_[i].depth) + "]*" + algebra.label(factors_[i].key);
  }
  return out;
}

bool PbwDescending::operator()(const PbwMonomial& a, const PbwMonomial& b) const {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  if (fa.size() != fb.size()) return fa.size() > fb.size();
  for (size_t i = 0; i < fa.size(); ++i)
    if (fa[i].depth != fb[i].depth) return fa[i].depth > fb[i].depth;
  for (size_t i = 0; i < fa.size(); ++i)
    if (fa[i].key != fb[i].key) return fa[i].key < fb[i].key;
  return false;
}

// ---------------------------------------------------------------- EnvElement

EnvElement::EnvElement(AlgebraPtr algebra, EnvTerms terms) : algebra_(std::move(algebra)) {
  for (auto& [m, c] : terms)
    if (!mapvir::is_zero(c)) terms_.emplace(m, c);
}

EnvElement EnvElement::one(const AlgebraPtr& algebra) { return monomial(algebra, PbwMonomial()); }

EnvElement EnvElement::monomial(const AlgebraPtr& algebra, PbwMonomial m, const Scalar& coeff) {
  EnvElement out(algebra);
  out.add_term(m, coeff);
  return out;
}

Scalar EnvElement::coeff(const PbwMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void EnvElement::add_term(const PbwMonomial& m, const Scalar& c) {
  if (mapvir::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (mapvir::is_zero(it->second)) terms_.erase(it);
  }
}

EnvElement& EnvElement::operator+=(const EnvElement& o) {
  require_same_algebra(algebra_, o.algebra_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

EnvElement& EnvElement::operator-=(const EnvElement& o) {
  require_same_algebra(algebra_, o.algebra_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

EnvElement& EnvElement::operator*=(const Scalar& s) {
  if (mapvir::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

bool operator==(const EnvElement& a, const EnvElement& b) {
  return same_algebra(a.algebra_, b.algebra_) && a.terms_ == b.terms_;
}

std::string EnvElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    bool negative = sgn(c) < 0;
    Scalar mag = negative ? Scalar(-c) : c;
    out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    std::string mono = m.to_string(*algebra_);
    if (m.empty())
      out += mapvir::to_string(mag);
    else
      out += (mag == 1 ? "" : mapvir::to_string(mag) + "*") + mono;
  }
  return out;
}

// ---------------------------------------------------------------- straightening

const EnvTerms& Straightener::left_multiply(const PbwFactor& g, const PbwMonomial& m) {
  auto key = std::make_pair(g, m);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  EnvElement result(algebra_);
  const auto& fs = m.factors();
  if (fs.empty() || !factor_greater(fs.front(), g)) {
    std::vector<PbwFactor> v;
    v.reserve(fs.size() + 1);
    v.push_back(g);
    v.insert(v.end(), fs.begin(), fs.end());
    result.add_term(PbwMonomial(std::move(v)), 1);
  } else {
    // g X R = X (g R) + [g, X] R with X the leading factor of m.
    const PbwFactor& lead = fs.front();
    PbwMonomial rest(std::vector<PbwFactor>(fs.begin() + 1, fs.end()));
    EnvTerms moved = left_multiply(g, rest);
    for (const auto& [n, c] : moved) {
      const EnvTerms& t = left_multiply(lead, n);
      for (const auto& [mono, cc] : t) result.add_term(mono, c * cc);
    }
    // [d_{-a} e, d_{-b} f] = (a - b) d_{-(a+b)} ef
    if (g.depth != lead.depth) {
      Scalar coef(g.depth - lead.depth);
      Coords prod = algebra_->product(g.key, lead.key);
      long depth = g.depth + lead.depth;
      if (depth > mode_max())
        throw ModeRange("mode " + std::to_string(-depth) + " exceeds the bound " + std::to_string(mode_max()));
      for (const auto& [k, pc] : prod) {
        EnvTerms t = left_multiply(PbwFactor{depth, k}, rest);
        for (const auto& [mono, cc] : t) result.add_term(mono, coef * pc * cc);
      }
    }
  }
  auto [it, inserted] = memo_.emplace(std::move(key), result.terms());
  return it->second;
}

EnvElement Straightener::left_multiply(const PbwFactor& g, const EnvElement& x) {
  require_same_algebra(algebra_, x.algebra());
  EnvElement out(algebra_);
  for (const auto& [m, c] : x.terms()) {
    const EnvTerms& t = left_multiply(g, m);
    for (const auto& [mono, cc] : t) out.add_term(mono, c * cc);
  }
  return out;
}

EnvElement Straightener::left_multiply(const LieElement& x, const EnvElement& y) {
  require_same_algebra(algebra_, x.algebra());
  if (!x.c_part().is_zero()) throw NotLowering("letter " + x.to_string() + " has a central component");
  EnvElement out(algebra_);
  for (const auto& [n, f] : x.d_part()) {
    if (n >= 0) throw NotLowering("letter " + x.to_string() + " has a component of mode " + std::to_string(n));
    for (const auto& [k, c] : f.coords()) {
      EnvElement part = left_multiply(PbwFactor{-n, k}, y);
      out += c * part;
    }
  }
  return out;
}

EnvElement Straightener::straighten(std::span<const LieElement> word) {
  for (const auto& letter : word) {
    require_same_algebra(algebra_, letter.algebra());
    if (!letter.c_part().is_zero()) throw NotLowering("letter " + letter.to_string() + " has a central component");
    for (const auto& [n, f] : letter.d_part())
      if (n >= 0) throw NotLowering("letter " + letter.to_string() + " has a component of mode " + std::to_string(n));
  }
  EnvElement acc = EnvElement::one(algebra_);
  for (auto it = word.rbegin(); it != word.rend(); ++it) acc = left_multiply(*it, acc);
  return acc;
}

EnvElement straighten(std::span<const LieElement> word) {
  if (word.empty()) throw ValidationError("straighten needs a nonempty word");
  Straightener s(word.front().algebra());
  return s.straighten(word);
}

HeightHm height_hm(const EnvElement& x) {
  if (x.is_zero()) return {-1, EnvElement(x.algebra())};
  const auto& [m, c] = *x.terms().begin();
  return {m.height(), EnvElement::monomial(x.algebra(), m, c)};
}

std::vector<long> color_keys(const Algebra& algebra, const std::optional<Window>& colors) {
  if (algebra.is_finite()) return algebra.keys();
  if (!colors) throw MissingWindow("a colour window is required for " + algebra.describe());
  std::vector<long> out;
  for (long k = colors->lo; k <= colors->hi; ++k)
    if (algebra.valid_key(k)) out.push_back(k);
  return out;
}

namespace {

void enumerate(long remaining, const std::vector<PbwFactor>& generators, size_t start, std::vector<PbwFactor>& current,
               std::vector<PbwMonomial>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  // generators are listed highest first; each next factor may not exceed the previous one.
  for (size_t i = start; i < generators.size(); ++i) {
    if (generators[i].depth > remaining) continue;
    current.push_back(generators[i]);
    enumerate(remaining - generators[i].depth, generators, i, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<PbwMonomial> pbw_basis(long n, const Algebra& algebra, const std::optional<Window>& colors) {
  if (n < 0) throw ValidationError("pbw_basis weight must be >= 0");
  std::vector<long> keys = color_keys(algebra, colors);
  std::vector<PbwFactor> generators;
  for (long depth = n; depth >= 1; --depth)
    for (long k : keys) generators.push_back({depth, k});
  std::vector<PbwMonomial> out;
  std::vector<PbwFactor> current;
  enumerate(n, generators, 0, current, out);
  std::sort(out.begin(), out.end(), PbwDescending{});
  return out;
}

}  // namespace mapvir
