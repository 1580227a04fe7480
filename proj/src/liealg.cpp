#include "mapvir/liealg.hpp"

#include <atomic>
#include <cstdlib>

#include "mapvir/errors.hpp"

namespace mapvir {

namespace {

long initial_mode_max() {
  if (const char* env = std::getenv("MAPVIR_MODE_MAX")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 64;
}

std::atomic<long>& mode_bound() {
  static std::atomic<long> bound{initial_mode_max()};
  return bound;
}

void check_mode(long mode) {
  long bound = mode_max();
  if (mode > bound || mode < -bound)
    throw ModeRange("mode " + std::to_string(mode) + " exceeds the bound " + std::to_string(bound) +
                    " (MAPVIR_MODE_MAX)");
}

// "coef*name" for scalar multiples of the unit, "name*(f)" otherwise.
std::string term_text(const std::string& name, const AlgebraElement& f, bool& first) {
  std::string out;
  const Coords& unit = f.algebra()->unit();
  bool scalar_multiple = false;
  Scalar s;
  if (!unit.empty()) {
    const auto& [uk, uc] = *unit.begin();
    s = f.coeff(uk) / uc;
    scalar_multiple = f == s * AlgebraElement::unit(f.algebra());
  }
  if (scalar_multiple) {
    bool negative = sgn(s) < 0;
    Scalar mag = negative ? Scalar(-s) : s;
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    out += (mag == 1 ? "" : to_string(mag) + "*") + name;
  } else {
    out += first ? "" : " + ";
    out += name + "*(" + f.to_string() + ")";
  }
  first = false;
  return out;
}

}  // namespace

long mode_max() { return mode_bound().load(); }

void set_mode_max(long bound) {
  if (bound < 1) throw ValidationError("mode bound must be positive");
  mode_bound().store(bound);
}

Scalar central_coefficient(long m) {
  mpz_class mm(m);
  Scalar out(mm * mm * mm - mm, 12);
  out.canonicalize();
  return out;
}

LieElement::LieElement(AlgebraPtr algebra) : algebra_(algebra), c_(algebra) {}

LieElement LieElement::d(long mode, const AlgebraElement& f) {
  check_mode(mode);
  LieElement out(f.algebra());
  out.add_d(mode, f);
  return out;
}

LieElement LieElement::c(const AlgebraElement& g) {
  LieElement out(g.algebra());
  out.c_ = g;
  return out;
}

AlgebraElement LieElement::d_coeff(long mode) const {
  auto it = d_.find(mode);
  return it == d_.end() ? AlgebraElement(algebra_) : it->second;
}

void LieElement::add_d(long mode, const AlgebraElement& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = d_.try_emplace(mode, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) d_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& o) {
  require_same_algebra(algebra_, o.algebra_);
  for (const auto& [n, f] : o.d_) add_d(n, f);
  c_ += o.c_;
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  require_same_algebra(algebra_, o.algebra_);
  for (const auto& [n, f] : o.d_) add_d(n, -f);
  c_ -= o.c_;
  return *this;
}

LieElement& LieElement::operator*=(const Scalar& s) {
  if (mapvir::is_zero(s)) {
    d_.clear();
    c_ *= s;
    return *this;
  }
  for (auto& [n, f] : d_) f *= s;
  c_ *= s;
  return *this;
}

bool operator==(const LieElement& a, const LieElement& b) {
  return same_algebra(a.algebra_, b.algebra_) && a.d_ == b.d_ && a.c_ == b.c_;
}

std::string LieElement::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [n, f] : d_) out += term_text("d[" + std::to_string(n) + "]", f, first);
  if (!c_.is_zero()) out += term_text("c", c_, first);
  return out;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  require_same_algebra(x.algebra(), y.algebra());
  LieElement out(x.algebra());
  for (const auto& [m, f] : x.d_part())
    for (const auto& [n, g] : y.d_part()) {
      AlgebraElement fg = f * g;
      if (fg.is_zero()) continue;
      if (n != m) out += Scalar(n - m) * LieElement::d(m + n, fg);
      if (m == -n) {
        Scalar cc = central_coefficient(m);
        if (!is_zero(cc)) out += cc * LieElement::c(fg);
      }
    }
  return out;
}

std::vector<GradeComponent> grade_decompose(const LieElement& x) {
  std::vector<GradeComponent> out;
  bool zero_done = x.c_part().is_zero();
  for (const auto& [n, f] : x.d_part()) {
    if (!zero_done && n > 0) {
      out.push_back({0, LieElement::c(x.c_part())});
      zero_done = true;
    }
    LieElement piece = LieElement::d(n, f);
    if (n == 0 && !x.c_part().is_zero()) {
      piece += LieElement::c(x.c_part());
      zero_done = true;
    }
    out.push_back({n, std::move(piece)});
  }
  if (!zero_done) out.push_back({0, LieElement::c(x.c_part())});
  return out;
}

}  // namespace mapvir
