#include "mapvir/parse.hpp"

#include <cctype>
#include <string>

#include "mapvir/errors.hpp"

namespace mapvir {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : s_(text) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  char peek_raw(size_t ahead) const { return i_ + ahead < s_.size() ? s_[i_ + ahead] : '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string digits() {
    skip();
    size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    return std::string(s_.substr(start, i_ - start));
  }
  long integer() {
    bool neg = accept('-');
    if (!neg) accept('+');
    std::string d = digits();
    if (d.size() > 15) fail("integer too large");
    long v = std::stol(d);
    return neg ? -v : v;
  }
  std::string identifier() {
    skip();
    size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }
  size_t pos() const { return i_; }
  void reset(size_t p) { i_ = p; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("cannot parse \"" + std::string(s_) + "\" at offset " + std::to_string(i_) + ": " + what);
  }

 private:
  std::string_view s_;
  size_t i_ = 0;
};

struct PolyOps {
  using Value = Poly;
  Value scalar(const Scalar& s) const { return Poly::constant(s); }
  Value ident(const std::string& name, Cursor& cur) const {
    if (name != "t") cur.fail("unknown symbol '" + name + "'");
    return Poly::monomial(1, 1);
  }
  Value power(const Value& v, long e, Cursor& cur) const {
    if (e < 0) cur.fail("negative exponent in a polynomial");
    return v.pow(static_cast<unsigned long>(e));
  }
  Value mul(const Value& a, const Value& b) const { return a * b; }
};

struct ElementOps {
  AlgebraPtr a;
  using Value = AlgebraElement;
  Value scalar(const Scalar& s) const { return AlgebraElement::scalar(a, s); }
  Value ident(const std::string& name, Cursor& cur) const {
    if (auto key = a->key_for_label(name)) return AlgebraElement::basis(a, *key);
    if (name == "t" && (a->univariate() || a->kind() == AlgebraKind::polynomial || a->kind() == AlgebraKind::laurent))
      return AlgebraElement::t_power(a, 1);
    cur.fail("unknown basis label '" + name + "' for " + a->describe());
  }
  Value power(const Value& v, long e, Cursor& cur) const {
    if (e < 0) {
      if (v == AlgebraElement::t_power(a, 1)) return AlgebraElement::t_power(a, e);
      cur.fail("negative exponents apply to t only");
    }
    Value out = AlgebraElement::unit(a);
    for (long i = 0; i < e; ++i) out = out * v;
    return out;
  }
  Value mul(const Value& x, const Value& y) const { return x * y; }
};

template <class Ops>
class Parser {
 public:
  using Value = typename Ops::Value;
  Parser(Cursor& cur, Ops ops) : cur_(cur), ops_(std::move(ops)) {}

  Value expr() {
    bool neg = cur_.accept('-');
    if (!neg) cur_.accept('+');
    Value acc = term();
    if (neg) acc = ops_.mul(ops_.scalar(-1), acc);
    while (true) {
      if (cur_.accept('+')) {
        acc = acc + term();
      } else if (cur_.accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = power();
    while (cur_.accept('*')) acc = ops_.mul(acc, power());
    return acc;
  }

  Value power() {
    Value base = primary();
    if (cur_.accept('^')) {
      long e = cur_.accept('(') ? paren_int() : cur_.integer();
      base = ops_.power(base, e, cur_);
    }
    return base;
  }

  Value primary() {
    char c = cur_.peek();
    if (c == '(') {
      cur_.expect('(');
      Value v = expr();
      cur_.expect(')');
      return v;
    }
    if (c == '-') {
      cur_.expect('-');
      return ops_.mul(ops_.scalar(-1), power());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = cur_.digits();
      if (cur_.peek() == '/') {
        cur_.expect('/');
        num += "/" + cur_.digits();
      }
      return ops_.scalar(parse_scalar(num));
    }
    std::string name = cur_.identifier();
    if (name.empty()) cur_.fail("unexpected character");
    return ops_.ident(name, cur_);
  }

  // True when the cursor sits on d[ or a standalone c.
  bool at_generator() {
    size_t p = cur_.pos();
    std::string name = cur_.identifier();
    bool gen = (name == "d" && cur_.peek() == '[') || name == "c";
    cur_.reset(p);
    return gen;
  }

 private:
  long paren_int() {
    long e = cur_.integer();
    cur_.expect(')');
    return e;
  }

  Cursor& cur_;
  Ops ops_;
};

LieElement lie_term(Cursor& cur, Parser<ElementOps>& p, const AlgebraPtr& a) {
  AlgebraElement coeff = AlgebraElement::unit(a);
  while (!p.at_generator()) {
    coeff = coeff * p.power();
    cur.expect('*');
  }
  std::string name = cur.identifier();
  std::optional<long> mode;
  if (name == "d") {
    cur.expect('[');
    mode = cur.integer();
    cur.expect(']');
  }
  while (cur.accept('*')) coeff = coeff * p.power();
  return mode ? LieElement::d(*mode, coeff) : LieElement::c(coeff);
}

LieElement lie_expr(Cursor& cur, const AlgebraPtr& a) {
  Parser<ElementOps> p(cur, ElementOps{a});
  bool neg = cur.accept('-');
  if (!neg) cur.accept('+');
  LieElement acc = lie_term(cur, p, a);
  if (neg) acc = -acc;
  while (true) {
    if (cur.accept('+')) {
      acc += lie_term(cur, p, a);
    } else if (cur.accept('-')) {
      acc -= lie_term(cur, p, a);
    } else {
      return acc;
    }
  }
}

}  // namespace

Poly parse_poly(std::string_view text) {
  Cursor cur(text);
  Parser<PolyOps> p(cur, PolyOps{});
  Poly out = p.expr();
  if (!cur.done()) cur.fail("trailing input");
  return out;
}

AlgebraElement parse_element(std::string_view text, const AlgebraPtr& algebra) {
  Cursor cur(text);
  Parser<ElementOps> p(cur, ElementOps{algebra});
  AlgebraElement out = p.expr();
  if (!cur.done()) cur.fail("trailing input");
  return out;
}

LieElement parse_lie(std::string_view text, const AlgebraPtr& algebra) {
  Cursor cur(text);
  LieElement out = lie_expr(cur, algebra);
  if (!cur.done()) cur.fail("trailing input");
  return out;
}

std::vector<LieElement> parse_word(std::string_view text, const AlgebraPtr& algebra) {
  std::vector<LieElement> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t dot = text.find('.', start);
    if (dot == std::string_view::npos) dot = text.size();
    out.push_back(parse_lie(text.substr(start, dot - start), algebra));
    start = dot + 1;
  }
  return out;
}

}  // namespace mapvir
