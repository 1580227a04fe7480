#include "mapvir/evalmod.hpp"

#include <algorithm>

#include "mapvir/errors.hpp"

namespace mapvir {

namespace {

Scalar int_series_coefficient(const IntSeriesSpec& s, long n, long k) { return Scalar(k) + s.a * (n + 1) + s.b; }

bool windowed(const Algebra& a) { return a.kind() == AlgebraKind::polynomial || a.kind() == AlgebraKind::laurent; }

// A/m for an evaluation has dimension one; the image of f is a number.
Scalar evaluate(const QuotientMap& q, const AlgebraElement& f) {
  AlgebraElement image = q(f);
  if (q.target()->dim() != 1) throw ComputationError("evaluation quotient is not one-dimensional");
  return image.coeff(q.target()->keys().front());
}

Ideal ideal_of_poly(const AlgebraPtr& a, const Poly& g) {
  if (windowed(*a)) return Ideal::principal_record(a, g);
  AlgebraElement f = AlgebraElement::from_poly(a, g);
  return ideal_closure(std::span(&f, 1));
}

// Kernel of a quotient map, as an ideal of its source.
Ideal kernel_ideal(const QuotientMap& q) {
  const AlgebraPtr& a = q.source();
  if (windowed(*a)) return Ideal::principal_record(a, *q.target()->modulus());
  const auto& keys = a->keys();
  const size_t m = q.target()->dim();
  Matrix rows(m, Vector(keys.size()));
  for (size_t j = 0; j < keys.size(); ++j) {
    Vector img = q(AlgebraElement::basis(a, keys[j])).dense();
    for (size_t i = 0; i < m; ++i) rows[i][j] = img[i];
  }
  return Ideal::from_span(a, kernel(rows, keys.size()));
}

// Preimage in A of an ideal of A/m^n (which is a univariate quotient).
Ideal preimage(const QuotientMap& q, const Ideal& inner) {
  const AlgebraPtr& a = q.source();
  if (inner.is_zero()) return kernel_ideal(q);
  if (inner.is_whole()) return Ideal::whole(a);
  auto g = inner.univariate_generator();
  if (!g || !a->univariate()) throw UnsupportedKind("preimage needs univariate presentations");
  return ideal_of_poly(a, *g);
}

struct PointList {
  std::optional<std::vector<Scalar>> points;
  std::string note;
};

PointList support_points(const Ideal& ann) {
  const AlgebraPtr& a = ann.algebra();
  PointList out;
  if (ann.is_whole()) {
    out.points = std::vector<Scalar>{};
    return out;
  }
  if (a->kind() == AlgebraKind::product_local) {
    std::vector<Scalar> pts;
    for (const auto& comp : local_decomposition(a))
      if (ann.subset_of(comp.maximal)) pts.push_back(comp.point);
    out.points = pts;
    return out;
  }
  if (!a->univariate()) {
    out.note = a->dim() == 1 ? "A = Q has the single maximal ideal (0)"
                             : "no presentation to enumerate maximal ideals; generators only";
    return out;
  }
  auto g = ann.univariate_generator();
  if (!g || g->is_zero()) {
    out.note = "annihilator is zero: every maximal ideal is in the support";
    return out;
  }
  auto roots = rational_roots(*g);
  std::vector<Scalar> pts;
  for (const auto& [p, mult] : roots.roots) pts.push_back(p);
  if (!roots.fully_split) out.note = "generator does not split over Q; rational points only";
  out.points = pts;
  return out;
}

std::vector<long> all_modes() { return {-2, -1, 0, 1, 2}; }

// A few basis keys for closure checks on windowed algebras, keeping products small.
std::vector<long> closure_keys(const Algebra& a) {
  if (!windowed(a)) return a.keys();
  std::vector<long> out;
  for (long k : a.keys())
    if (k >= -1 && k <= 2) out.push_back(k);
  return out;
}

bool verma_annihilates(const ModuleHandle& h, const FunctionalPtr& phi, const std::optional<Window>& colors,
                       bool irreducible, const AlgebraElement& f, long depth) {
  if (irreducible && phi->is_zero()) return true;
  // c (x) f acts by the scalar phi(c f) on the whole module.
  if (!is_zero(phi->c(f))) return false;
  VermaModule module(phi, colors);
  for (long d = 0; d <= depth; ++d) {
    for (const auto& m : module.basis(d)) {
      if (irreducible && d > 0 && module.in_maximal_submodule(EnvElement::monomial(h.algebra(), m), d)) continue;
      for (long n : all_modes()) {
        EnvElement img(h.algebra());
        try {
          img = module.act(LieElement::d(n, f), EnvElement::monomial(h.algebra(), m));
        } catch (const WindowOverflow&) {
          continue;
        }
        if (img.is_zero()) continue;
        if (!irreducible) return false;
        if (d - n < 0) return false;
        if (!module.in_maximal_submodule(img, d - n)) return false;
      }
    }
  }
  return true;
}

void merge_into(std::vector<VermaVector>& acc, const VermaVector& piece) {
  for (auto& v : acc)
    if (v.depth() == piece.depth()) {
      EnvElement sum = v.env() + piece.env();
      v = VermaVector(v.functional(), sum, v.depth());
      return;
    }
  acc.push_back(piece);
}

std::map<long, long> convolve(const std::map<long, long>& x, const std::map<long, long>& y) {
  std::map<long, long> out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) out[i + j] += a * b;
  return out;
}

struct FactorTable {
  Scalar base;
  std::map<long, long> mult;
  bool truncated = false;
};

long max_offset(const ModuleHandle& h) {
  return std::visit(
      [](const auto& v) -> long {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ModuleHandle::IntSeriesEval>) {
          return v.spec.window.hi;
        } else if constexpr (std::is_same_v<T, ModuleHandle::GeneralizedEval>) {
          return max_offset(*v.inner);
        } else if constexpr (std::is_same_v<T, ModuleHandle::Tensor>) {
          long s = 0;
          for (const auto& f : v.factors) s += max_offset(*f);
          return s;
        } else {
          return 0;
        }
      },
      h.variant());
}

// Table of a single factor over the offsets [lo, hi] that can matter.
FactorTable factor_table(const ModuleHandle& h, long lo, const std::optional<Window>& colors) {
  return std::visit(
      [&](const auto& v) -> FactorTable {
        using T = std::decay_t<decltype(v)>;
        FactorTable out;
        if constexpr (std::is_same_v<T, ModuleHandle::IntSeriesEval>) {
          out.base = v.spec.base_weight();
          for (long k = v.spec.window.lo; k <= v.spec.window.hi; ++k) out.mult[k] = 1;
          out.truncated = true;
        } else if constexpr (std::is_same_v<T, ModuleHandle::GeneralizedEval>) {
          return factor_table(*v.inner, lo, colors);
        } else if constexpr (std::is_same_v<T, ModuleHandle::Tensor>) {
          throw UnsupportedKind("nested tensor handles");
        } else {
          out.base = v.phi->highest_weight();
          const long depth = std::max(0L, -lo);
          auto use = colors ? colors : v.colors;
          std::vector<long> dims;
          if constexpr (std::is_same_v<T, ModuleHandle::Verma>)
            dims = verma_dims(*v.phi->algebra(), depth, use);
          else
            dims = quotient_dims(v.phi, depth, use);
          for (long n = 0; n <= depth; ++n) out.mult[-n] = dims[static_cast<size_t>(n)];
        }
        return out;
      },
      h.variant());
}

}  // namespace

// ---------------------------------------------------------- intermediate series

IntSeriesAction int_series_act(const IntSeriesSpec& spec, long mode, long k) {
  if (!spec.window.contains(k) || !spec.window.contains(mode + k))
    throw WindowOverflow("d[" + std::to_string(mode) + "] t^" + std::to_string(k) + " leaves the window [" +
                         std::to_string(spec.window.lo) + ", " + std::to_string(spec.window.hi) + "]");
  return {int_series_coefficient(spec, mode, k), mode + k};
}

bool int_series_lie_consistent(const IntSeriesSpec& spec, long mode_bound, Window ks) {
  const Window& w = spec.window;
  for (long k = ks.lo; k <= ks.hi; ++k) {
    if (!w.contains(k)) continue;
    for (long m = -mode_bound; m <= mode_bound; ++m)
      for (long n = -mode_bound; n <= mode_bound; ++n) {
        if (!w.contains(m + k) || !w.contains(n + k) || !w.contains(m + n + k)) continue;
        auto dn = int_series_act(spec, n, k);
        auto dm = int_series_act(spec, m, k);
        Scalar lhs = dn.coefficient * int_series_act(spec, m, dn.target).coefficient -
                     dm.coefficient * int_series_act(spec, n, dm.target).coefficient;
        Scalar rhs = Scalar(n - m) * int_series_act(spec, m + n, k).coefficient;
        if (lhs != rhs) return false;
      }
  }
  return true;
}

std::optional<long> int_series_trivial_submodule(const IntSeriesSpec& spec) {
  const Window& w = spec.window;
  for (long k = w.lo; k <= w.hi; ++k) {
    bool killed = true;
    for (long n = w.lo - k; n <= w.hi - k && killed; ++n) killed = is_zero(int_series_coefficient(spec, n, k));
    if (killed && w.size() > 1) return k;
  }
  return std::nullopt;
}

std::optional<long> int_series_trivial_quotient(const IntSeriesSpec& spec) {
  const Window& w = spec.window;
  for (long k0 = w.lo; k0 <= w.hi; ++k0) {
    bool missed = true;
    for (long src = w.lo; src <= w.hi && missed; ++src) missed = is_zero(int_series_coefficient(spec, k0 - src, src));
    if (missed && w.size() > 1) return k0;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- handles

ModuleHandlePtr ModuleHandle::verma(FunctionalPtr phi, std::optional<Window> colors) {
  AlgebraPtr a = phi->algebra();
  return ModuleHandlePtr(new ModuleHandle(a, Verma{std::move(phi), colors}));
}

ModuleHandlePtr ModuleHandle::irreducible(FunctionalPtr phi, std::optional<Window> colors) {
  AlgebraPtr a = phi->algebra();
  return ModuleHandlePtr(new ModuleHandle(a, Irreducible{std::move(phi), colors}));
}

ModuleHandlePtr ModuleHandle::int_series_eval(const AlgebraPtr& algebra, IntSeriesSpec spec, const Scalar& point) {
  if (spec.window.lo > spec.window.hi) throw ValidationError("int-series window: lo > hi");
  const long bound = std::min(6L, spec.window.size());
  if (!int_series_lie_consistent(spec, bound, spec.window))
    throw ComputationError("intermediate-series action fails the commutator check");
  QuotientMap q = local_quotient(algebra, point, 1);
  return ModuleHandlePtr(new ModuleHandle(algebra, IntSeriesEval{std::move(spec), point, std::move(q)}));
}

ModuleHandlePtr ModuleHandle::generalized_eval(const AlgebraPtr& algebra, const Scalar& point, int order,
                                               ModuleHandlePtr inner) {
  QuotientMap q = local_quotient(algebra, point, order);
  require_same_algebra(q.target(), inner->algebra());
  return ModuleHandlePtr(new ModuleHandle(algebra, GeneralizedEval{point, order, std::move(inner), std::move(q)}));
}

ModuleHandlePtr ModuleHandle::tensor(std::vector<ModuleHandlePtr> factors) {
  if (factors.empty()) throw ValidationError("tensor needs at least one factor");
  AlgebraPtr a = factors.front()->algebra();
  for (const auto& f : factors) require_same_algebra(a, f->algebra());
  return ModuleHandlePtr(new ModuleHandle(a, Tensor{std::move(factors)}));
}

std::string ModuleHandle::kind_name() const {
  static const char* names[] = {"verma", "irreducible_quotient", "int_series_eval", "generalized_eval", "tensor"};
  return names[variant_.index()];
}

// ---------------------------------------------------------------- action

LieElement push_forward(const LieElement& x, const QuotientMap& q) {
  require_same_algebra(q.source(), x.algebra());
  LieElement out(q.target());
  for (const auto& [mode, f] : x.d_part()) out += LieElement::d(mode, q(f));
  out += LieElement::c(q(x.c_part()));
  return out;
}

ModuleVector eval_act(const ModuleHandle& handle, const LieElement& x, const ModuleVector& v) {
  require_same_algebra(handle.algebra(), x.algebra());
  return std::visit(
      [&](const auto& h) -> ModuleVector {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, ModuleHandle::IntSeriesEval>) {
          const auto* vec = std::get_if<IntSeriesVector>(&v);
          if (!vec) throw ValidationError("int-series module expects Laurent coefficients");
          IntSeriesVector out;
          for (const auto& [mode, f] : x.d_part()) {
            Scalar s = evaluate(h.projection, f);
            if (is_zero(s)) continue;
            for (const auto& [k, ck] : *vec) {
              auto act = int_series_act(h.spec, mode, k);
              out[act.target] += s * ck * act.coefficient;
            }
          }
          std::erase_if(out, [](const auto& kv) { return is_zero(kv.second); });
          return out;
        } else if constexpr (std::is_same_v<T, ModuleHandle::GeneralizedEval>) {
          return eval_act(*h.inner, push_forward(x, h.projection), v);
        } else if constexpr (std::is_same_v<T, ModuleHandle::Tensor>) {
          throw UnsupportedKind("tensor handles do not materialize vectors");
        } else {
          const auto* vec = std::get_if<std::vector<VermaVector>>(&v);
          if (!vec) throw ValidationError("highest weight module expects PBW vectors");
          std::vector<VermaVector> out;
          for (const auto& piece : *vec)
            for (const auto& img : verma_act(x, piece)) merge_into(out, img);
          std::erase_if(out, [](const VermaVector& w) { return w.is_zero(); });
          std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.depth() < q.depth(); });
          return out;
        }
      },
      handle.variant());
}

// ------------------------------------------------------------- annihilators

bool annihilates_on_window(const ModuleHandle& handle, const AlgebraElement& f, long depth) {
  require_same_algebra(handle.algebra(), f.algebra());
  return std::visit(
      [&](const auto& h) -> bool {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, ModuleHandle::IntSeriesEval>) {
          Scalar s = evaluate(h.projection, f);
          if (is_zero(s)) return true;
          const Window& w = h.spec.window;
          for (long k = w.lo; k <= w.hi; ++k)
            for (long n : all_modes())
              if (w.contains(n + k) && !is_zero(int_series_coefficient(h.spec, n, k))) return false;
          return true;
        } else if constexpr (std::is_same_v<T, ModuleHandle::GeneralizedEval>) {
          return annihilates_on_window(*h.inner, h.projection(f), depth);
        } else if constexpr (std::is_same_v<T, ModuleHandle::Tensor>) {
          for (const auto& factor : h.factors)
            if (!annihilates_on_window(*factor, f, depth)) return false;
          return true;
        } else {
          return verma_annihilates(handle, h.phi, h.colors, std::is_same_v<T, ModuleHandle::Irreducible>, f, depth);
        }
      },
      handle.variant());
}

AnnihilatorReport annihilator_support(const ModuleHandle& handle, long depth) {
  const AlgebraPtr& a = handle.algebra();
  AnnihilatorReport out{Ideal::zero(a), std::nullopt, false, ""};
  std::visit(
      [&](const auto& h) {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, ModuleHandle::IntSeriesEval>) {
          const Window& w = h.spec.window;
          bool trivial = true;
          for (long k = w.lo; k <= w.hi && trivial; ++k)
            for (long n : all_modes())
              if (w.contains(n + k) && !is_zero(int_series_coefficient(h.spec, n, k))) trivial = false;
          out.annihilator = trivial ? Ideal::whole(a) : kernel_ideal(h.projection);
        } else if constexpr (std::is_same_v<T, ModuleHandle::GeneralizedEval>) {
          AnnihilatorReport inner = annihilator_support(*h.inner, depth);
          out.annihilator = preimage(h.projection, inner.annihilator);
          out.note = inner.note;
        } else if constexpr (std::is_same_v<T, ModuleHandle::Tensor>) {
          std::optional<Ideal> acc;
          for (const auto& factor : h.factors) {
            AnnihilatorReport r = annihilator_support(*factor, depth);
            acc = acc ? ideal_intersection(*acc, r.annihilator) : r.annihilator;
            if (!r.note.empty()) out.note += (out.note.empty() ? "" : "; ") + r.note;
          }
          out.annihilator = *acc;
        } else if constexpr (std::is_same_v<T, ModuleHandle::Verma>) {
          // M(phi) is free over U(V_-), so only f = 0 kills d_{-1} (x) f.
          out.annihilator = Ideal::zero(a);
        } else {
          if (h.phi->is_zero()) {
            out.annihilator = Ideal::whole(a);
          } else if (a->is_finite()) {
            out.annihilator = vanishing_ideal(*h.phi, true);
          } else {
            const long bound = std::max(0L, h.phi->known_hi() - a->window().lo);
            auto q = check_quasifinite(*h.phi, bound);
            if (q.status == QuasifiniteStatus::quasifinite_certified) {
              out.annihilator = *q.witness;
            } else {
              out.annihilator = Ideal::zero(a);
              out.note = "no certified witness; annihilator reported as (0): " + q.note;
            }
          }
        }
      },
      handle.variant());

  // Every generator times every basis vector must annihilate as well.
  out.closure_verified = true;
  std::vector<AlgebraElement> gens;
  if (out.annihilator.is_principal_record()) {
    if (!out.annihilator.generator().is_zero()) gens.push_back(AlgebraElement::from_poly(a, out.annihilator.generator()));
  } else {
    gens = out.annihilator.elements();
  }
  for (const auto& g : gens) {
    for (long key : closure_keys(*a)) {
      AlgebraElement fg(a);
      try {
        fg = g * AlgebraElement::basis(a, key);
      } catch (const WindowOverflow&) {
        continue;
      }
      if (!annihilates_on_window(handle, fg, depth)) {
        out.closure_verified = false;
        break;
      }
    }
    if (!out.closure_verified) break;
  }

  PointList pts = support_points(out.annihilator);
  out.support = pts.points;
  if (!pts.note.empty()) out.note += (out.note.empty() ? "" : "; ") + pts.note;
  return out;
}

// ---------------------------------------------------------------- weights

WeightTable weight_multiplicities(const ModuleHandle& handle, Window offsets, const std::optional<Window>& colors) {
  if (offsets.lo > offsets.hi) throw ValidationError("offset window: lo > hi");
  WeightTable out;
  const ModuleHandle* h = &handle;
  while (const auto* g = std::get_if<ModuleHandle::GeneralizedEval>(&h->variant())) h = g->inner.get();

  if (const auto* is = std::get_if<ModuleHandle::IntSeriesEval>(&h->variant())) {
    // V(a, b) is one-dimensional in every weight; the window only limits vectors.
    out.base_weight = is->spec.base_weight();
    for (long k = offsets.lo; k <= offsets.hi; ++k) out.multiplicities[k] = 1;
    out.trivial_submodule = int_series_trivial_submodule(is->spec).has_value();
    out.trivial_quotient = int_series_trivial_quotient(is->spec).has_value();
  } else if (const auto* t = std::get_if<ModuleHandle::Tensor>(&h->variant())) {
    std::vector<long> maxes;
    long total_max = 0;
    for (const auto& f : t->factors) {
      maxes.push_back(max_offset(*f));
      total_max += maxes.back();
    }
    std::map<long, long> acc{{0, 1}};
    out.base_weight = 0;
    for (size_t i = 0; i < t->factors.size(); ++i) {
      // Deeper offsets of this factor cannot be compensated by the others.
      const long lo = offsets.lo - (total_max - maxes[i]);
      FactorTable ft = factor_table(*t->factors[i], lo, colors);
      out.base_weight += ft.base;
      out.window_truncated = out.window_truncated || ft.truncated;
      acc = convolve(acc, ft.mult);
    }
    for (long k = offsets.lo; k <= offsets.hi; ++k) {
      auto it = acc.find(k);
      out.multiplicities[k] = it == acc.end() ? 0 : it->second;
    }
  } else {
    FactorTable ft = factor_table(*h, offsets.lo, colors);
    out.base_weight = ft.base;
    for (long k = offsets.lo; k <= offsets.hi; ++k) {
      auto it = ft.mult.find(k);
      out.multiplicities[k] = it == ft.mult.end() ? 0 : it->second;
    }
  }
  if (out.base_weight.get_den() == 1) out.zero_weight_offset = -out.base_weight.get_num().get_si();
  return out;
}

}  // namespace mapvir
