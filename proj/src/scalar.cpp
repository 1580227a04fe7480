#include "mapvir/scalar.hpp"

#include <cctype>

#include "mapvir/errors.hpp"

namespace mapvir {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  std::string_view digits = body;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  auto slash = digits.find('/');
  std::string_view num = digits.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : digits.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ValidationError("not a rational number: \"" + std::string(text) + "\"");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
  if (!body.empty() && body.front() == '-') n = -n;
  Scalar out(n, d);
  out.canonicalize();
  return out;
}

std::string to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Scalar rational(long num, long den) {
  Scalar out(num, den);
  out.canonicalize();
  return out;
}

Scalar pow(const Scalar& base, unsigned long exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return Scalar(num, den);
}

}  // namespace mapvir
