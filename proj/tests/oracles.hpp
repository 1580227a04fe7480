#pragma once

// Reference computations used to judge the library. Nothing here calls into
// mapvir; polynomials are plain coefficient vectors and module pairings are
// evaluated by naive word rewriting.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Poly = std::vector<Q>;  // ascending coefficients, may carry trailing zeros

inline Q frac(long p, long q) {
  Q x(p, q);
  x.canonicalize();
  return x;
}

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

inline Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Schoolbook long division remainder.
inline Poly reduce(Poly a, Poly m) {
  trim(a);
  trim(m);
  while (a.size() >= m.size()) {
    Q f = a.back() / m.back();
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[shift + i] -= f * m[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Poly monomial(long k) {
  Poly p(static_cast<size_t>(k + 1));
  p.back() = 1;
  return p;
}

inline Poly expand_roots(const std::vector<std::pair<Q, int>>& factors) {
  Poly p{Q(1)};
  for (const auto& [a, n] : factors)
    for (int i = 0; i < n; ++i) p = mul(p, Poly{-a, Q(1)});
  return p;
}

inline Q eval(const Poly& p, const Q& x) {
  Q acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// Coefficients of prod_{k >= 1} (1 - q^k)^{-d} up to q^n.
inline std::vector<long> colored_partitions(int d, int n) {
  std::vector<long> c(static_cast<size_t>(n + 1), 0);
  c[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int rep = 0; rep < d; ++rep)
      // multiply by 1/(1 - q^k)
      for (int i = k; i <= n; ++i) c[static_cast<size_t>(i)] += c[static_cast<size_t>(i - k)];
  return c;
}

// All partitions of n, parts non-increasing.
inline std::vector<std::vector<long>> partitions(long n, long max_part = -1) {
  if (max_part < 0) max_part = n;
  if (n == 0) return {{}};
  std::vector<std::vector<long>> out;
  for (long p = std::min(n, max_part); p >= 1; --p)
    for (auto rest : partitions(n - p, p)) {
      rest.insert(rest.begin(), p);
      out.push_back(std::move(rest));
    }
  return out;
}

inline size_t rank(std::vector<std::vector<Q>> m) {
  size_t r = 0;
  if (m.empty()) return 0;
  size_t cols = m[0].size();
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Q f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Cofactor expansion; only for small matrices.
inline Q det(const std::vector<std::vector<Q>>& m) {
  size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Q acc = 0;
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<Q>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Q> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Q term = m[0][j] * det(minor);
    acc += (j % 2 == 0) ? term : Q(-term);
  }
  return acc;
}

// Highest weight pairing on Vir (x) A. A word is a list of letters d_mode (x) f
// read as an operator product applied to v (rightmost first). value() gives
// the coefficient of v in word . v, computed by commuting non-negative modes
// to the right with [d_m f, d_n g] = (n - m) d_{m+n} fg + delta (m^3 - m)/12 c fg.
struct Letter {
  long mode;
  Poly f;
  friend bool operator<(const Letter& a, const Letter& b) {
    return a.mode != b.mode ? a.mode < b.mode : a.f < b.f;
  }
};
using Word = std::vector<Letter>;

class Pairing {
 public:
  // phi_d0 / phi_c take a polynomial in t; `reduce_by` gives the algebra relation.
  Pairing(std::function<Q(const Poly&)> phi_d0, std::function<Q(const Poly&)> phi_c, Poly modulus = {})
      : d0_(std::move(phi_d0)), c_(std::move(phi_c)), modulus_(std::move(modulus)) {}

  Q value(const Word& w) {
    long total = 0;
    for (const auto& l : w) total += l.mode;
    if (total != 0) return 0;
    if (w.empty()) return 1;
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    Q out = compute(w);
    memo_.emplace(w, out);
    return out;
  }

 private:
  Poly times(const Poly& a, const Poly& b) const { return modulus_.empty() ? mul(a, b) : reduce(mul(a, b), modulus_); }

  Q compute(const Word& w) {
    size_t last = w.size() - 1;
    if (w[last].f.empty()) return 0;
    if (w[last].mode > 0) return 0;
    if (w[last].mode == 0) {
      Word rest(w.begin(), w.end() - 1);
      return d0_(w[last].f) * value(rest);
    }
    size_t i = last;
    while (i-- > 0)
      if (w[i].mode >= 0) break;
    if (i == static_cast<size_t>(-1)) return 0;  // all lowering, nonzero weight
    long m = w[i].mode, n = w[i + 1].mode;
    Poly fg = times(w[i].f, w[i + 1].f);
    Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    Q out = value(swapped);
    if (fg.empty()) return out;
    Word merged(w.begin(), w.begin() + static_cast<long>(i));
    Word tail(w.begin() + static_cast<long>(i) + 2, w.end());
    if (n - m != 0) {
      Word x = merged;
      x.push_back({m + n, fg});
      x.insert(x.end(), tail.begin(), tail.end());
      out += Q(n - m) * value(x);
    }
    if (m == -n) {
      Word x = merged;
      x.insert(x.end(), tail.begin(), tail.end());
      out += frac(m * m * m - m, 12) * c_(fg) * value(x);
    }
    return out;
  }

  std::function<Q(const Poly&)> d0_, c_;
  Poly modulus_;
  std::map<Word, Q> memo_;
};

// Corank of the classical pairing at depth n: rows are raising monomials
// d_{k_r} ... d_{k_1}, columns lowering monomials d_{-l_1} ... d_{-l_s} v.
inline long classical_kernel_dim(const Q& c, const Q& h, long n) {
  Pairing pair([h](const Poly& f) { return f.empty() ? Q(0) : h * f[0]; },
               [c](const Poly& f) { return f.empty() ? Q(0) : c * f[0]; });
  auto parts = partitions(n);
  std::vector<std::vector<Q>> g;
  for (const auto& mu : parts) {
    std::vector<Q> row;
    for (const auto& lam : parts) {
      Word w;
      for (auto it = mu.rbegin(); it != mu.rend(); ++it) w.push_back({*it, Poly{Q(1)}});
      for (long l : lam) w.push_back({-l, Poly{Q(1)}});
      row.push_back(pair.value(w));
    }
    g.push_back(std::move(row));
  }
  return static_cast<long>(parts.size() - rank(g));
}

// sum_i a_i b_{n-i}
inline std::vector<long> convolve(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out(std::min(a.size(), b.size()), 0);
  for (size_t n = 0; n < out.size(); ++n)
    for (size_t i = 0; i <= n; ++i) out[n] += a[i] * b[n - i];
  return out;
}

// d_n t^k = (k + a(n+1) + b) t^{n+k}
inline Q int_series_coeff(const Q& a, const Q& b, long n, long k) { return Q(k) + a * Q(n + 1) + b; }

}  // namespace oracle
