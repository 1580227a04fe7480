#pragma once

#include <string_view>
#include <vector>

#include "mapvir/liealg.hpp"

namespace mapvir {

/// Polynomial in t: "t^2 - 3*t + 2", "(t-1)^2*(t-2)", "1/2*t".
Poly parse_poly(std::string_view text);

/// Algebra element built from rationals, t (univariate presentations), basis
/// labels, + - * ^ and parentheses. Negative powers of t need a laurent algebra.
AlgebraElement parse_element(std::string_view text, const AlgebraPtr& algebra);

/// Sum of terms [coef*]d[n][*f] and [coef*]c[*g], e.g. "d[-1]*(t) + c*(1/2)".
LieElement parse_lie(std::string_view text, const AlgebraPtr& algebra);

/// Word of Lie elements separated by " . ", e.g. "d[-1]*1 . d[-2]*t".
std::vector<LieElement> parse_word(std::string_view text, const AlgebraPtr& algebra);

}  // namespace mapvir
